//! Extended Kalman filter over position, velocity and channel gain.
//!
//! The state `[d, v, alpha_re, alpha_im]` evolves linearly, so prediction is
//! an ordinary Kalman prediction. Only the pilot observation is nonlinear, and
//! its Jacobian has a closed form: the position partial is a double sum
//! weighted by `(p + q)`, the velocity partial is `dt` times the position
//! partial, and the gain partials are the unweighted double sum.
//!
//! The complex observation and Jacobian row are stacked into real and
//! imaginary rows before the update, with measurement covariance
//! `(sigma_n^2 / 2) I_2` for circularly symmetric noise.

use nalgebra::{Matrix2, Matrix2x4, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::array_channel::{BeamPointing, ComplexGain, Link, SeparableSums};
use crate::error::{invalid, Error, Result};
use crate::geometry::{angles_from_position, cos_angles_from_state};

/// Filter state `[d, v, alpha_re, alpha_im]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateVector {
    /// Horizontal distance from the overpass, meters.
    pub d: f64,
    /// Velocity, m/s.
    pub v: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
}

impl StateVector {
    pub fn new(d: f64, v: f64, alpha_re: f64, alpha_im: f64) -> Self {
        Self {
            d,
            v,
            alpha_re,
            alpha_im,
        }
    }

    pub fn gain(&self) -> ComplexGain {
        ComplexGain::new(self.alpha_re, self.alpha_im)
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::new(self.d, self.v, self.alpha_re, self.alpha_im)
    }

    pub fn from_vector(x: &Vector4<f64>) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    pub fn is_finite(&self) -> bool {
        self.to_vector().iter().all(|e| e.is_finite())
    }
}

/// How the filter propagates the channel gain between blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainTransition {
    /// Gain rows of the transition matrix are identity.
    #[default]
    Identity,
    /// Gain rows carry the Gauss-Markov correlation `rho`, matching the truth.
    Correlated,
}

/// Linear kinematic state model `x[k+1] = A x[k] + u[k]`, `u ~ N(0, sigma_u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateTransition {
    pub a: Matrix4<f64>,
    pub sigma_u: Matrix4<f64>,
    pub dt: f64,
    pub rho: f64,
    pub sigma_w: f64,
}

impl StateTransition {
    pub fn new(dt: f64, rho: f64, sigma_w: f64, gain: GainTransition) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(invalid("dt", "block duration must be positive"));
        }
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(invalid("rho", "rho must lie in (0,1]"));
        }
        if !(sigma_w >= 0.0 && sigma_w.is_finite()) {
            return Err(invalid("sigma_w", "velocity noise must be non-negative"));
        }
        let g = match gain {
            GainTransition::Identity => 1.0,
            GainTransition::Correlated => rho,
        };
        #[rustfmt::skip]
        let a = Matrix4::new(
            1.0, dt,  0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, g,   0.0,
            0.0, 0.0, 0.0, g,
        );
        let gain_var = 1.0 - rho * rho;
        let sigma_u = Matrix4::from_diagonal(&Vector4::new(
            (dt * sigma_w).powi(2),
            sigma_w * sigma_w,
            gain_var,
            gain_var,
        ));
        Ok(Self {
            a,
            sigma_u,
            dt,
            rho,
            sigma_w,
        })
    }
}

/// Estimate and covariance carried between blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterState {
    pub x_hat: StateVector,
    pub p: Matrix4<f64>,
}

impl FilterState {
    pub fn is_finite(&self) -> bool {
        self.x_hat.is_finite() && self.p.iter().all(|e| e.is_finite())
    }
}

/// A complex scalar observation rewritten as two real rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackedMeasurement {
    pub z2: Vector2<f64>,
    pub h2: Matrix2x4<f64>,
    pub r2: Matrix2<f64>,
}

/// Starting filter state: the estimate from initial channel estimation and
/// `P = sigma_u`.
pub fn init(x0: StateVector, st: &StateTransition) -> FilterState {
    FilterState {
        x_hat: x0,
        p: st.sigma_u,
    }
}

pub fn predict(fs: &FilterState, st: &StateTransition) -> FilterState {
    let x = st.a * fs.x_hat.to_vector();
    FilterState {
        x_hat: StateVector::from_vector(&x),
        p: st.a * fs.p * st.a.transpose() + st.sigma_u,
    }
}

/// Predicted observation and its Jacobian row `[dz/dd, dz/dv, dz/dalpha_re, dz/dalpha_im]`.
///
/// The pilot geometry is evaluated at `x.d + x.v * dt`, so `x` carries the
/// previous block's position and velocity together with the gain in effect
/// for the observed block.
pub(crate) fn linearize(x: &StateVector, pointing: BeamPointing, link: &Link) -> (Complex64, [Complex64; 4]) {
    let s = &link.scenario;
    let (cos_theta, cos_phi) = cos_angles_from_state(x.d, x.v, s);
    let sums = SeparableSums::from_cosines(cos_theta, cos_phi, pointing, link);
    let norm = (link.rx.n * link.tx.n) as f64;

    let dz_dalpha_re = link.pilot * sums.plain() / norm;
    let dz_dalpha_im = Complex64::i() * dz_dalpha_re;
    let z = x.gain().to_complex() * dz_dalpha_re;

    let pos = x.d + x.v * s.dt;
    let r2 = s.h * s.h + pos * pos;
    let slope = s.h * s.h / (r2 * r2.sqrt());
    let dz_dd = x.gain().to_complex() * link.pilot / norm
        * Complex64::new(0.0, link.rx.phase_step() * slope)
        * sums.weighted();
    let dz_dv = dz_dd * s.dt;
    (z, [dz_dd, dz_dv, dz_dalpha_re, dz_dalpha_im])
}

/// Closed-form partial of the observation with respect to position.
pub fn jacobian_position(x: &StateVector, pointing: BeamPointing, link: &Link) -> Complex64 {
    linearize(x, pointing, link).1[0]
}

/// Partial with respect to velocity: `dt` times the position partial.
pub fn jacobian_velocity(x: &StateVector, pointing: BeamPointing, link: &Link) -> Complex64 {
    jacobian_position(x, pointing, link) * link.scenario.dt
}

/// Partials with respect to `(alpha_re, alpha_im)`.
pub fn jacobian_gain(x: &StateVector, pointing: BeamPointing, link: &Link) -> (Complex64, Complex64) {
    let row = linearize(x, pointing, link).1;
    (row[2], row[3])
}

pub fn stack(z: Complex64, h_row: &[Complex64; 4], sigma_n2: f64) -> StackedMeasurement {
    StackedMeasurement {
        z2: Vector2::new(z.re, z.im),
        h2: Matrix2x4::from_fn(|r, c| if r == 0 { h_row[c].re } else { h_row[c].im }),
        r2: Matrix2::identity() * (sigma_n2 / 2.0),
    }
}

/// Kalman measurement update on a raw 4-state, shared by both filters.
///
/// `S` holds the inverted innovation covariance, so the gain is `P H^T S`.
pub(crate) fn kalman_update(
    x: &Vector4<f64>,
    p: &Matrix4<f64>,
    meas: &StackedMeasurement,
    z_pred: Complex64,
) -> Result<(Vector4<f64>, Matrix4<f64>)> {
    let h = &meas.h2;
    let innovation_cov = h * p * h.transpose() + meas.r2;
    let s = innovation_cov
        .try_inverse()
        .filter(|m| m.iter().all(|e| e.is_finite()))
        .ok_or(Error::SingularInnovation {
            determinant: innovation_cov.determinant(),
        })?;
    let k = p * h.transpose() * s;
    let innovation = meas.z2 - Vector2::new(z_pred.re, z_pred.im);
    let x_new = x + k * innovation;
    let p_new = (Matrix4::identity() - k * h) * p;
    Ok((x_new, (p_new + p_new.transpose()) * 0.5))
}

pub fn update(fs_pred: &FilterState, meas: &StackedMeasurement, z_pred: Complex64) -> Result<FilterState> {
    let (x, p) = kalman_update(&fs_pred.x_hat.to_vector(), &fs_pred.p, meas, z_pred)?;
    Ok(FilterState {
        x_hat: StateVector::from_vector(&x),
        p,
    })
}

/// Beam pointing for the block after `x`: the angles of `x.d + x.v * dt`.
pub fn pointing_for_next_block(x: &StateVector, link: &Link) -> BeamPointing {
    let a = angles_from_position(x.d + x.v * link.scenario.dt, &link.scenario);
    BeamPointing {
        theta_bar: a.theta,
        phi_bar: a.phi,
    }
}

/// One tracking block: predict, linearize at the predicted state, update on
/// the pilot observed with `pointing`, and re-point the beams.
pub fn step(
    fs: &FilterState,
    st: &StateTransition,
    z_observed: Complex64,
    pointing: BeamPointing,
    link: &Link,
    sigma_n2: f64,
) -> Result<(FilterState, BeamPointing)> {
    let pred = predict(fs, st);
    let lin_point = StateVector {
        d: fs.x_hat.d,
        v: fs.x_hat.v,
        ..pred.x_hat
    };
    let (z_pred, h_row) = linearize(&lin_point, pointing, link);
    let meas = stack(z_observed, &h_row, sigma_n2);
    let next = update(&pred, &meas, z_pred)?;
    let beams = pointing_for_next_block(&next.x_hat, link);
    Ok((next, beams))
}

/// The proposed tracker bundled with its fixed parameters.
#[derive(Debug, Clone)]
pub struct KinematicTracker {
    pub state: FilterState,
    pub transition: StateTransition,
    pub link: Link,
    pub sigma_n2: f64,
    pointing: BeamPointing,
}

impl KinematicTracker {
    pub fn new(x0: StateVector, transition: StateTransition, link: Link, sigma_n2: f64) -> Self {
        let state = init(x0, &transition);
        let pointing = pointing_for_next_block(&x0, &link);
        Self {
            state,
            transition,
            link,
            sigma_n2,
            pointing,
        }
    }

    /// Beams to use for the next pilot.
    pub fn pointing(&self) -> BeamPointing {
        self.pointing
    }

    pub fn observe(&mut self, z: Complex64) -> Result<()> {
        let (state, pointing) = step(
            &self.state,
            &self.transition,
            z,
            self.pointing,
            &self.link,
            self.sigma_n2,
        )?;
        self.state = state;
        self.pointing = pointing;
        Ok(())
    }
}
