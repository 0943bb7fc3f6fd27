//! Reference tracker with angles as state.
//!
//! The state is `[theta, phi, alpha_re, alpha_im]` with an identity transition
//! and additive process noise: each angle wanders with variance
//! `(0.5 pi / 180)^2` per block and the gain components with `1 - rho^2`. The
//! two angles are estimated independently and the tracker has no notion of
//! the vehicle's position or speed.

use std::f64::consts::PI;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::array_channel::{BeamPointing, ComplexGain, Link, SeparableSums};
use crate::ekf::{kalman_update, stack};
use crate::error::{invalid, Result};
use crate::geometry::wrap_angle;

/// Per-block angle process-noise variance, rad^2.
pub const ANGLE_PROCESS_VARIANCE: f64 = (0.5 * PI / 180.0) * (0.5 * PI / 180.0);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AngleState {
    pub theta: f64,
    pub phi: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
}

impl AngleState {
    pub fn gain(&self) -> ComplexGain {
        ComplexGain::new(self.alpha_re, self.alpha_im)
    }

    fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.theta, self.phi, self.alpha_re, self.alpha_im)
    }

    fn from_vector(x: &Vector4<f64>) -> Self {
        Self {
            theta: wrap_angle(x[0]),
            phi: wrap_angle(x[1]),
            alpha_re: x[2],
            alpha_im: x[3],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_vector().iter().all(|e| e.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleFilterState {
    pub x_hat: AngleState,
    pub p: Matrix4<f64>,
}

/// Random-walk process model of the angle-state tracker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleProcess {
    pub q: Matrix4<f64>,
}

impl AngleProcess {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(invalid("rho", "rho must lie in (0,1]"));
        }
        let g = 1.0 - rho * rho;
        Ok(Self {
            q: Matrix4::from_diagonal(&Vector4::new(
                ANGLE_PROCESS_VARIANCE,
                ANGLE_PROCESS_VARIANCE,
                g,
                g,
            )),
        })
    }
}

pub fn baseline_init(x0: AngleState, process: &AngleProcess) -> AngleFilterState {
    AngleFilterState {
        x_hat: x0,
        p: process.q,
    }
}

pub fn baseline_predict(fs: &AngleFilterState, process: &AngleProcess) -> AngleFilterState {
    AngleFilterState {
        x_hat: fs.x_hat,
        p: fs.p + process.q,
    }
}

/// Predicted observation and Jacobian row `[dz/dtheta, dz/dphi, dz/dalpha_re, dz/dalpha_im]`.
pub(crate) fn linearize(x: &AngleState, pointing: BeamPointing, link: &Link) -> (Complex64, [Complex64; 4]) {
    let sums = SeparableSums::from_cosines(x.theta.cos(), x.phi.cos(), pointing, link);
    let norm = (link.rx.n * link.tx.n) as f64;
    let k = link.rx.phase_step();
    let alpha = x.gain().to_complex();

    let dz_dre = link.pilot * sums.plain() / norm;
    let dz_dim = Complex64::i() * dz_dre;
    let scale = alpha * link.pilot / norm;
    let dz_dtheta = scale * Complex64::new(0.0, k * x.theta.sin()) * sums.rx1 * sums.tx0;
    let dz_dphi = scale * Complex64::new(0.0, -k * x.phi.sin()) * sums.rx0 * sums.tx1;
    (alpha * dz_dre, [dz_dtheta, dz_dphi, dz_dre, dz_dim])
}

pub fn baseline_jacobian(x: &AngleState, pointing: BeamPointing, link: &Link) -> [Complex64; 4] {
    linearize(x, pointing, link).1
}

pub fn baseline_step(
    fs: &AngleFilterState,
    process: &AngleProcess,
    z_observed: Complex64,
    pointing: BeamPointing,
    link: &Link,
    sigma_n2: f64,
) -> Result<(AngleFilterState, BeamPointing)> {
    let pred = baseline_predict(fs, process);
    let (z_pred, row) = linearize(&pred.x_hat, pointing, link);
    let meas = stack(z_observed, &row, sigma_n2);
    let (x, p) = kalman_update(&pred.x_hat.to_vector(), &pred.p, &meas, z_pred)?;
    let x_hat = AngleState::from_vector(&x);
    let beams = BeamPointing {
        theta_bar: x_hat.theta,
        phi_bar: x_hat.phi,
    };
    Ok((AngleFilterState { x_hat, p }, beams))
}

/// The angle-state tracker bundled with its fixed parameters.
#[derive(Debug, Clone)]
pub struct AngleTracker {
    pub state: AngleFilterState,
    pub process: AngleProcess,
    pub link: Link,
    pub sigma_n2: f64,
    pointing: BeamPointing,
}

impl AngleTracker {
    pub fn new(x0: AngleState, process: AngleProcess, link: Link, sigma_n2: f64) -> Self {
        Self {
            state: baseline_init(x0, &process),
            process,
            link,
            sigma_n2,
            pointing: BeamPointing {
                theta_bar: x0.theta,
                phi_bar: x0.phi,
            },
        }
    }

    pub fn pointing(&self) -> BeamPointing {
        self.pointing
    }

    pub fn observe(&mut self, z: Complex64) -> Result<()> {
        let (state, pointing) = baseline_step(&self.state, &self.process, z, self.pointing, &self.link, self.sigma_n2)?;
        self.state = state;
        self.pointing = pointing;
        Ok(())
    }
}
