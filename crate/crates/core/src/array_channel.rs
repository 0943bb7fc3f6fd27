//! Uniform linear arrays, the single-path channel and the noiseless pilot
//! observation.
//!
//! Two evaluations of the observation are provided. [`measure_inner_product`]
//! forms `alpha * w^H a_r a_t^H f * s` from explicit vectors and takes the
//! two angles independently. [`measure_double_sum`] expands the same quantity
//! into a double sum over receive element `p` and transmit element `q`, with
//! both cosines expressed through the vehicle position, which is the form the
//! filter linearizes.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::geometry::{cos_angles_from_state, Scenario};

/// One uniform linear array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    /// Number of antenna elements.
    pub n: usize,
    /// Element spacing, meters.
    pub spacing: f64,
    /// Carrier wavelength, meters.
    pub wavelength: f64,
}

impl ArrayConfig {
    pub fn new(n: usize, spacing: f64, wavelength: f64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n_antennas", "an array needs at least one element"));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(invalid("spacing", "element spacing must be positive"));
        }
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(invalid("wavelength", "wavelength must be positive"));
        }
        Ok(Self {
            n,
            spacing,
            wavelength,
        })
    }

    /// `n` elements at half-wavelength spacing on a unit wavelength.
    pub fn half_wavelength(n: usize) -> Self {
        Self {
            n,
            spacing: 0.5,
            wavelength: 1.0,
        }
    }

    /// Electrical spacing `2 pi spacing / lambda`, radians.
    pub fn phase_step(&self) -> f64 {
        2.0 * PI * self.spacing / self.wavelength
    }
}

/// Complex channel coefficient `alpha = re + j im`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexGain {
    pub re: f64,
    pub im: f64,
}

impl ComplexGain {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for ComplexGain {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

/// Pointing directions of the receive combiner and transmit beamformer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamPointing {
    pub theta_bar: f64,
    pub phi_bar: f64,
}

/// Receive and transmit arrays plus the scenario and pilot symbol: all the
/// fixed parameters of the observation model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub rx: ArrayConfig,
    pub tx: ArrayConfig,
    pub scenario: Scenario,
    pub pilot: Complex64,
}

impl Link {
    /// Both arrays must share spacing and wavelength, and the pilot must
    /// have unit magnitude.
    pub fn new(rx: ArrayConfig, tx: ArrayConfig, scenario: Scenario, pilot: Complex64) -> Result<Self> {
        if rx.spacing != tx.spacing || rx.wavelength != tx.wavelength {
            return Err(invalid(
                "spacing",
                "receive and transmit arrays must share spacing and wavelength",
            ));
        }
        if (pilot.norm() - 1.0).abs() > 1e-12 {
            return Err(invalid("pilot", "pilot must have unit magnitude"));
        }
        Ok(Self {
            rx,
            tx,
            scenario,
            pilot,
        })
    }

    /// Symmetric link with `n` half-wavelength elements per side and `s = 1`.
    pub fn symmetric(n: usize, scenario: Scenario) -> Self {
        let arr = ArrayConfig::half_wavelength(n);
        Self {
            rx: arr,
            tx: arr,
            scenario,
            pilot: Complex64::new(1.0, 0.0),
        }
    }

    fn phase_step(&self) -> f64 {
        self.rx.phase_step()
    }

    fn norm(&self) -> f64 {
        (self.rx.n * self.tx.n) as f64
    }
}

/// Array response toward `angle`: entry `p` is `exp(-j k p cos(angle)) / sqrt(n)`.
pub fn steering_vector(angle: f64, cfg: &ArrayConfig) -> Vec<Complex64> {
    let scale = 1.0 / (cfg.n as f64).sqrt();
    let step = -cfg.phase_step() * angle.cos();
    (0..cfg.n)
        .map(|p| Complex64::from_polar(scale, step * p as f64))
        .collect()
}

/// Rank-one line-of-sight channel `alpha a_r(theta) a_t(phi)^H`.
pub fn channel_matrix(
    gain: ComplexGain,
    theta: f64,
    phi: f64,
    rx: &ArrayConfig,
    tx: &ArrayConfig,
) -> DMatrix<Complex64> {
    let ar = steering_vector(theta, rx);
    let at = steering_vector(phi, tx);
    let alpha = gain.to_complex();
    DMatrix::from_fn(rx.n, tx.n, |r, c| alpha * ar[r] * at[c].conj())
}

fn hermitian_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Noiseless pilot observation `alpha w^H(theta_bar) a_r(theta) a_t^H(phi) f(phi_bar) s`.
pub fn measure_inner_product(
    gain: ComplexGain,
    theta: f64,
    phi: f64,
    pointing: BeamPointing,
    rx: &ArrayConfig,
    tx: &ArrayConfig,
    pilot: Complex64,
) -> Complex64 {
    let w = steering_vector(pointing.theta_bar, rx);
    let ar = steering_vector(theta, rx);
    let at = steering_vector(phi, tx);
    let f = steering_vector(pointing.phi_bar, tx);
    gain.to_complex() * hermitian_dot(&w, &ar) * hermitian_dot(&at, &f) * pilot
}

/// Noiseless observation written in the state variables, evaluated term by
/// term:
///
/// `(alpha s / (Nt Nr)) sum_q sum_p exp{ j k [ (p + q) D / sqrt(h^2 + D^2) + b_pq ] }`
///
/// with `D = d_prev + v_prev dt` and `b_pq = p cos(theta_bar) - q cos(phi_bar)`.
pub fn measure_double_sum(
    gain: ComplexGain,
    d_prev: f64,
    v_prev: f64,
    pointing: BeamPointing,
    link: &Link,
) -> Complex64 {
    let (_, cos_phi) = cos_angles_from_state(d_prev, v_prev, &link.scenario);
    let k = link.phase_step();
    let (ct_bar, cp_bar) = (pointing.theta_bar.cos(), pointing.phi_bar.cos());
    let mut acc = Complex64::new(0.0, 0.0);
    for q in 0..link.tx.n {
        for p in 0..link.rx.n {
            let (p, q) = (p as f64, q as f64);
            let b_pq = p * ct_bar - q * cp_bar;
            acc += Complex64::cis(k * ((p + q) * cos_phi + b_pq));
        }
    }
    gain.to_complex() * link.pilot * acc / link.norm()
}

/// `(sum_m exp(j m x), sum_m m exp(j m x))` over `m = 0..n`.
fn phase_sums(n: usize, x: f64) -> (Complex64, Complex64) {
    let mut s0 = Complex64::new(0.0, 0.0);
    let mut s1 = Complex64::new(0.0, 0.0);
    for m in 0..n {
        let e = Complex64::cis(x * m as f64);
        s0 += e;
        s1 += e * m as f64;
    }
    (s0, s1)
}

/// Per-element sums of the observation's double sum, factorized over `p`
/// and `q`. The exponent `k [(p + q) C + p cos(theta_bar) - q cos(phi_bar)]`
/// splits into a `p` part and a `q` part, so every weighted double sum the
/// filters need is a product of two single sums.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeparableSums {
    /// `sum_p exp(j k p a)`, `sum_p p exp(j k p a)`.
    pub rx0: Complex64,
    pub rx1: Complex64,
    /// `sum_q exp(j k q b)`, `sum_q q exp(j k q b)`.
    pub tx0: Complex64,
    pub tx1: Complex64,
}

impl SeparableSums {
    /// Sums for the general two-angle observation: `a = cos(theta_bar) - cos(theta)`,
    /// `b = cos(phi) - cos(phi_bar)`.
    pub fn from_cosines(cos_theta: f64, cos_phi: f64, pointing: BeamPointing, link: &Link) -> Self {
        let k = link.phase_step();
        let (rx0, rx1) = phase_sums(link.rx.n, k * (pointing.theta_bar.cos() - cos_theta));
        let (tx0, tx1) = phase_sums(link.tx.n, k * (cos_phi - pointing.phi_bar.cos()));
        Self { rx0, rx1, tx0, tx1 }
    }

    /// `sum_q sum_p exp(...)`
    pub fn plain(&self) -> Complex64 {
        self.rx0 * self.tx0
    }

    /// `sum_q sum_p (p + q) exp(...)`
    pub fn weighted(&self) -> Complex64 {
        self.rx1 * self.tx0 + self.rx0 * self.tx1
    }
}
