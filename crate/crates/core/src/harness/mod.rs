//! Monte Carlo experiments: trials, RMSE curves, sweeps and CSV output.

pub mod config;
pub mod curve;
pub mod output;
pub mod sweep;
pub mod trial;

pub use config::{BeamwidthModel, ExperimentConfig, FilterKind, FilterSelection};
pub use curve::{beamwidth, mse_curve, tracking_threshold, MseCurve};
pub use output::{emit_csv, write_manifest};
pub use sweep::{run_sweep, CellResult, SweepResults};
pub use trial::{run_trial, OperatingPoint, TrialTrace};
