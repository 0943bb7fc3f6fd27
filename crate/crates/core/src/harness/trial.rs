use std::f64::consts::PI;

use crate::array_channel::{ArrayConfig, BeamPointing, Link};
use crate::baseline::{AngleProcess, AngleState, AngleTracker};
use crate::ekf::{KinematicTracker, StateTransition, StateVector};
use crate::error::Result;
use crate::geometry::{wrap_angle, Scenario};
use crate::truth::{self, noise_variance_for_snr, trial_rng, NoiseParams, TruthState, TruthTrace};

use super::config::{ExperimentConfig, FilterKind};

/// One sweep cell's operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub snr_db: f64,
    pub speed_kmh: f64,
}

/// Absolute pointing errors of one trial, one entry per tracking block.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialTrace {
    pub phi_err: Vec<f64>,
    pub theta_err: Vec<f64>,
    /// First block (1-based) at which the filter failed or went non-finite.
    pub diverged_at: Option<usize>,
}

/// Fixed per-experiment parameters derived from the config.
#[derive(Debug, Clone, Copy)]
pub struct TrialSetup {
    pub link: Link,
    pub noise: NoiseParams,
    pub transition: StateTransition,
    pub angle_process: AngleProcess,
    pub initial_distance: f64,
    pub initial_speed: f64,
}

impl TrialSetup {
    pub fn new(cfg: &ExperimentConfig, op: OperatingPoint) -> Result<Self> {
        let scenario = Scenario::new(cfg.h, cfg.dt)?;
        let arr = ArrayConfig::new(cfg.n_antennas, cfg.spacing_wavelengths, 1.0)?;
        let link = Link::new(arr, arr, scenario, num_complex::Complex64::new(1.0, 0.0))?;
        let sigma_n2 = noise_variance_for_snr(op.snr_db, cfg.signal_power);
        Ok(Self {
            link,
            noise: NoiseParams::new(cfg.sigma_w, sigma_n2, cfg.rho)?,
            transition: StateTransition::new(cfg.dt, cfg.rho, cfg.sigma_w, cfg.gain_transition)?,
            angle_process: AngleProcess::new(cfg.rho)?,
            initial_distance: cfg.h / cfg.initial_phi_deg.to_radians().tan(),
            initial_speed: op.speed_kmh / 3.6,
        })
    }

    /// Ground truth for trial `trial`; depends only on the seed and index.
    pub fn truth(&self, seed: u64, trial: u64, n_blocks: usize) -> TruthTrace {
        let mut rng = trial_rng(seed, trial);
        let initial = TruthState {
            d: self.initial_distance,
            v: self.initial_speed,
            alpha: truth::init_alpha(&mut rng),
            k: 0,
        };
        truth::simulate(initial, &self.noise, &self.link.scenario, n_blocks, &mut rng)
    }
}

enum Tracker {
    Kinematic(KinematicTracker),
    Angle(AngleTracker),
}

impl Tracker {
    fn new(kind: FilterKind, setup: &TrialSetup, initial: &TruthState) -> Self {
        let sigma_n2 = setup.noise.sigma_n2;
        match kind {
            FilterKind::Proposed => {
                let x0 = StateVector::new(initial.d, initial.v, initial.alpha.re, initial.alpha.im);
                Tracker::Kinematic(KinematicTracker::new(x0, setup.transition, setup.link, sigma_n2))
            }
            FilterKind::Baseline => {
                let a = initial.angles(&setup.link.scenario);
                let x0 = AngleState {
                    theta: a.theta,
                    phi: a.phi,
                    alpha_re: initial.alpha.re,
                    alpha_im: initial.alpha.im,
                };
                Tracker::Angle(AngleTracker::new(x0, setup.angle_process, setup.link, sigma_n2))
            }
        }
    }

    fn pointing(&self) -> BeamPointing {
        match self {
            Tracker::Kinematic(t) => t.pointing(),
            Tracker::Angle(t) => t.pointing(),
        }
    }

    fn observe(&mut self, z: num_complex::Complex64) -> Result<bool> {
        match self {
            Tracker::Kinematic(t) => t.observe(z).map(|_| t.state.is_finite()),
            Tracker::Angle(t) => t.observe(z).map(|_| t.state.x_hat.is_finite() && t.state.p.iter().all(|e| e.is_finite())),
        }
    }
}

/// Runs one filter over a precomputed truth trace.
///
/// The error recorded for block `k` is between the true angles and the beams
/// that carried block `k`'s pilot. Once the filter fails or its state stops
/// being finite, every remaining block is recorded with error `pi`.
pub fn track(kind: FilterKind, setup: &TrialSetup, trace: &TruthTrace) -> TrialTrace {
    let n = trace.blocks.len();
    let mut out = TrialTrace {
        phi_err: Vec::with_capacity(n),
        theta_err: Vec::with_capacity(n),
        diverged_at: None,
    };
    let mut tracker = Tracker::new(kind, setup, &trace.initial);
    for (i, (ts, noise)) in trace.blocks.iter().enumerate() {
        let beams = tracker.pointing();
        let a = ts.angles(&setup.link.scenario);
        let phi_err = wrap_angle(a.phi - beams.phi_bar).abs();
        let theta_err = wrap_angle(a.theta - beams.theta_bar).abs();
        if !(phi_err.is_finite() && theta_err.is_finite()) {
            out.diverged_at = Some(i + 1);
            break;
        }
        out.phi_err.push(phi_err);
        out.theta_err.push(theta_err);
        let z = truth::observe_noiseless(ts, beams, &setup.link) + noise;
        if !matches!(tracker.observe(z), Ok(true)) {
            out.diverged_at = Some(i + 2);
            break;
        }
    }
    out.phi_err.resize(n, PI);
    out.theta_err.resize(n, PI);
    out
}

/// Simulates trial `trial` of `cfg` at `op` and tracks it with `kind`.
pub fn run_trial(cfg: &ExperimentConfig, op: OperatingPoint, kind: FilterKind, trial: u64) -> Result<TrialTrace> {
    let setup = TrialSetup::new(cfg, op)?;
    let trace = setup.truth(cfg.seed, trial, cfg.n_blocks);
    Ok(track(kind, &setup, &trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op() -> OperatingPoint {
        OperatingPoint {
            snr_db: 0.0,
            speed_kmh: 60.0,
        }
    }

    #[test]
    fn undisturbed_trial_stays_on_beam() {
        // Essentially noiseless: no velocity noise, constant gain, tiny
        // measurement noise.
        let cfg = ExperimentConfig {
            sigma_w: 0.0,
            rho: 1.0,
            n_blocks: 200,
            ..ExperimentConfig::default()
        };
        let op = OperatingPoint {
            snr_db: 200.0,
            speed_kmh: 60.0,
        };
        let tr = run_trial(&cfg, op, FilterKind::Proposed, 0).unwrap();
        assert!(tr.diverged_at.is_none());
        assert!(tr.phi_err.iter().all(|&e| e < 1e-6), "{:?}", &tr.phi_err[..5]);
        assert!(tr.theta_err.iter().all(|&e| e < 1e-6));
    }

    #[test]
    fn same_trial_is_reproducible() {
        let cfg = ExperimentConfig {
            n_blocks: 100,
            ..ExperimentConfig::default()
        };
        for kind in [FilterKind::Proposed, FilterKind::Baseline] {
            let a = run_trial(&cfg, op(), kind, 17).unwrap();
            let b = run_trial(&cfg, op(), kind, 17).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn trackers_share_truth_and_noise() {
        let cfg = ExperimentConfig::default();
        let setup = TrialSetup::new(&cfg, op()).unwrap();
        let a = setup.truth(cfg.seed, 5, 50);
        let b = setup.truth(cfg.seed, 5, 50);
        assert_eq!(a.blocks, b.blocks);
        assert_eq!(a.initial, b.initial);
    }

    #[test]
    fn error_grows_on_average_at_zero_db() {
        let cfg = ExperimentConfig {
            n_blocks: 300,
            ..ExperimentConfig::default()
        };
        let n = 200;
        let (mut early, mut late) = (0.0, 0.0);
        for t in 0..n {
            let tr = run_trial(&cfg, op(), FilterKind::Proposed, t).unwrap();
            early += tr.phi_err[..30].iter().map(|e| e * e).sum::<f64>();
            late += tr.phi_err[270..].iter().map(|e| e * e).sum::<f64>();
        }
        assert!(late > early, "early {early} late {late}");
    }
}
