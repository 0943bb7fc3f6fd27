use super::config::{BeamwidthModel, ExperimentConfig};
use super::trial::TrialTrace;

/// Per-block root mean square pointing error across trials.
#[derive(Debug, Clone, PartialEq)]
pub struct MseCurve {
    /// Transmit-angle RMSE per block, radians.
    pub rmse_phi: Vec<f64>,
    /// Receive-angle RMSE per block, radians.
    pub rmse_theta: Vec<f64>,
    /// Loss-of-track threshold on the transmit-angle RMSE, radians.
    pub threshold: f64,
    /// First block (1-based) whose transmit-angle RMSE exceeds the threshold.
    pub crossing: Option<usize>,
}

/// Beamwidth in radians for the configured array.
pub fn beamwidth(cfg: &ExperimentConfig) -> f64 {
    let n = cfg.n_antennas as f64;
    let base = match cfg.beamwidth_model {
        BeamwidthModel::Nominal => 2.0 / n,
        BeamwidthModel::HalfPower => 0.891 / (n * cfg.spacing_wavelengths),
    };
    cfg.beamwidth_scale * base
}

/// Valid-tracking threshold, half the beamwidth.
pub fn tracking_threshold(cfg: &ExperimentConfig) -> f64 {
    beamwidth(cfg) / 2.0
}

pub fn first_crossing(rmse: &[f64], threshold: f64) -> Option<usize> {
    rmse.iter().position(|&e| e > threshold).map(|i| i + 1)
}

/// Aggregates traces in the order given. Panics on an empty slice.
pub fn mse_curve(traces: &[TrialTrace], threshold: f64) -> MseCurve {
    assert!(!traces.is_empty(), "mse_curve needs at least one trace");
    let n_blocks = traces[0].phi_err.len();
    let mut sum_phi = vec![0.0; n_blocks];
    let mut sum_theta = vec![0.0; n_blocks];
    for t in traces {
        for (acc, e) in sum_phi.iter_mut().zip(&t.phi_err) {
            *acc += e * e;
        }
        for (acc, e) in sum_theta.iter_mut().zip(&t.theta_err) {
            *acc += e * e;
        }
    }
    let n = traces.len() as f64;
    let rmse_phi: Vec<f64> = sum_phi.into_iter().map(|s| (s / n).sqrt()).collect();
    let rmse_theta = sum_theta.into_iter().map(|s| (s / n).sqrt()).collect();
    MseCurve {
        crossing: first_crossing(&rmse_phi, threshold),
        rmse_phi,
        rmse_theta,
        threshold,
    }
}
