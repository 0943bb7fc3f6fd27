//! Beam tracking for mmWave vehicle-to-infrastructure links.
//!
//! A base station on an overpass serves a vehicle through uniform linear
//! arrays at both ends. After an initial channel estimate, each transmission
//! block carries a single pilot, and a tracker must keep the transmit and
//! receive beams pointed at the moving vehicle.
//!
//! - [`geometry`]: position to angle mapping.
//! - [`array_channel`]: steering vectors, channel and pilot observation.
//! - [`ekf`]: the kinematic tracker, an extended Kalman filter over
//!   position, velocity and complex channel gain.
//! - [`baseline`]: an angle-state tracker for comparison.
//! - [`truth`]: ground-truth vehicle, channel and noise processes.
//! - [`harness`]: Monte Carlo experiments, RMSE curves and CSV output.

pub mod array_channel;
pub mod baseline;
pub mod ekf;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod truth;

pub use array_channel::{ArrayConfig, BeamPointing, ComplexGain, Link};
pub use error::{Error, Result};
pub use geometry::{AnglePair, Scenario};
