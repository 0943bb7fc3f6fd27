//! Ground-truth vehicle and channel processes.
//!
//! A single velocity perturbation `w ~ N(0, sigma_w^2)` per block drives both
//! position and velocity; each gain component follows a first-order
//! Gauss-Markov recursion with stationary variance 1/2.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::array_channel::{measure_inner_product, BeamPointing, ComplexGain, Link};
use crate::error::{invalid, Result};
use crate::geometry::{angles_from_position, AnglePair, Scenario};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthState {
    pub d: f64,
    pub v: f64,
    pub alpha: ComplexGain,
    /// Block index.
    pub k: u64,
}

impl TruthState {
    pub fn angles(&self, scenario: &Scenario) -> AnglePair {
        angles_from_position(self.d, scenario)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    /// Velocity perturbation standard deviation per block, m/s.
    pub sigma_w: f64,
    /// Complex measurement noise variance.
    pub sigma_n2: f64,
    /// Gauss-Markov correlation of the channel gain.
    pub rho: f64,
}

impl NoiseParams {
    pub fn new(sigma_w: f64, sigma_n2: f64, rho: f64) -> Result<Self> {
        if !(sigma_w >= 0.0 && sigma_w.is_finite()) {
            return Err(invalid("sigma_w", "velocity noise must be non-negative"));
        }
        if !(sigma_n2 >= 0.0 && sigma_n2.is_finite()) {
            return Err(invalid("sigma_n2", "measurement noise variance must be non-negative"));
        }
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(invalid("rho", "rho must lie in (0,1]"));
        }
        Ok(Self {
            sigma_w,
            sigma_n2,
            rho,
        })
    }
}

/// Noise variance giving `snr_db` for a unit-power gain and pilot.
pub fn noise_variance_for_snr(snr_db: f64, signal_power: f64) -> f64 {
    signal_power * 10f64.powf(-snr_db / 10.0)
}

/// RNG for one trial. Streams are indexed by trial so any trial can be
/// regenerated alone.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, std: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    z * std
}

/// Initial gain with each component drawn from `N(0, 1/2)`.
pub fn init_alpha<R: Rng + ?Sized>(rng: &mut R) -> ComplexGain {
    let std = 0.5f64.sqrt();
    ComplexGain::new(gaussian(rng, std), gaussian(rng, std))
}

pub fn step_truth<R: Rng + ?Sized>(
    ts: &TruthState,
    np: &NoiseParams,
    scenario: &Scenario,
    rng: &mut R,
) -> TruthState {
    let w = gaussian(rng, np.sigma_w);
    let xi_std = ((1.0 - np.rho * np.rho) / 2.0).sqrt();
    let xi1 = gaussian(rng, xi_std);
    let xi2 = gaussian(rng, xi_std);
    TruthState {
        d: ts.d + ts.v * scenario.dt + w * scenario.dt,
        v: ts.v + w,
        alpha: ComplexGain::new(np.rho * ts.alpha.re + xi1, np.rho * ts.alpha.im + xi2),
        k: ts.k + 1,
    }
}

/// Circularly symmetric complex Gaussian sample with variance `sigma_n2`.
pub fn complex_noise<R: Rng + ?Sized>(rng: &mut R, sigma_n2: f64) -> Complex64 {
    if sigma_n2 == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let n = Normal::new(0.0, (sigma_n2 / 2.0).sqrt()).expect("finite std");
    Complex64::new(n.sample(rng), n.sample(rng))
}

/// Noiseless pilot seen through `pointing` at the true angles.
pub fn observe_noiseless(ts: &TruthState, pointing: BeamPointing, link: &Link) -> Complex64 {
    let a = ts.angles(&link.scenario);
    measure_inner_product(ts.alpha, a.theta, a.phi, pointing, &link.rx, &link.tx, link.pilot)
}

pub fn observe<R: Rng + ?Sized>(
    ts: &TruthState,
    pointing: BeamPointing,
    link: &Link,
    np: &NoiseParams,
    rng: &mut R,
) -> Complex64 {
    observe_noiseless(ts, pointing, link) + complex_noise(rng, np.sigma_n2)
}

/// One trial's ground truth: the state at each block and the measurement
/// noise sample that block's pilot will carry.
///
/// Generating the noise up front lets several trackers see the same
/// trajectory and noise realization even though their beams differ.
#[derive(Debug, Clone)]
pub struct TruthTrace {
    pub initial: TruthState,
    pub blocks: Vec<(TruthState, Complex64)>,
}

pub fn simulate<R: Rng + ?Sized>(
    initial: TruthState,
    np: &NoiseParams,
    scenario: &Scenario,
    n_blocks: usize,
    rng: &mut R,
) -> TruthTrace {
    let mut blocks = Vec::with_capacity(n_blocks);
    let mut ts = initial;
    for _ in 0..n_blocks {
        ts = step_truth(&ts, np, scenario, rng);
        let n = complex_noise(rng, np.sigma_n2);
        blocks.push((ts, n));
    }
    TruthTrace { initial, blocks }
}
