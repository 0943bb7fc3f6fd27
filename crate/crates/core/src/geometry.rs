//! Overpass geometry: vehicle position to angles of arrival and departure.
//!
//! The base station sits on an overpass at height `h` above the road and the
//! vehicle is at horizontal distance `d` from it. Angles are measured from the
//! positive x-axis to the ray joining receiver and transmitter, so the transmit
//! angle `phi` lies in the first quadrant and the receive angle `theta` in the
//! third. Positive velocity moves the vehicle away from the overpass.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// Static link geometry shared by the truth simulator and the filters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    /// Overpass height, meters.
    pub h: f64,
    /// Transmission block duration, seconds.
    pub dt: f64,
}

impl Scenario {
    pub fn new(h: f64, dt: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(invalid("h", "overpass height must be positive"));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(invalid("dt", "block duration must be positive"));
        }
        Ok(Self { h, dt })
    }
}

impl Default for Scenario {
    fn default() -> Self {
        Self { h: 3.0, dt: 1e-3 }
    }
}

/// Receive angle `theta` and transmit angle `phi`, radians in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    pub theta: f64,
    pub phi: f64,
}

/// Angles of the line-of-sight ray for a vehicle at horizontal distance `d`.
pub fn angles_from_position(d: f64, scenario: &Scenario) -> AnglePair {
    let h = scenario.h;
    AnglePair {
        theta: (-h).atan2(-d),
        phi: h.atan2(d),
    }
}

/// `(cos theta, cos phi)` at the position reached after one block, i.e. at
/// `d_prev + v_prev * dt`, without evaluating any trigonometric function.
pub fn cos_angles_from_state(d_prev: f64, v_prev: f64, scenario: &Scenario) -> (f64, f64) {
    let d = d_prev + v_prev * scenario.dt;
    let cos_phi = d / scenario.h.hypot(d);
    (-cos_phi, cos_phi)
}

/// Closed-form angle increment for a vehicle starting at angle `theta1` with
/// speed `v1` perturbed by `w1`:
///
/// `-atan( h / ((v1 + w1) dt cos^2(theta1)) - tan(theta1) )`
///
/// Diagnostic only. The filter works from exact positions and never calls
/// this; see [`angle_delta_geometric`] for the reference increment.
pub fn angle_delta_closed_form(theta1: f64, v1: f64, w1: f64, scenario: &Scenario) -> Result<f64> {
    let c = theta1.cos();
    let denom = (v1 + w1) * scenario.dt * c * c;
    if denom == 0.0 {
        return Err(Error::SingularAngleDelta);
    }
    Ok(-(scenario.h / denom - theta1.tan()).atan())
}

/// Increment of the transmit angle when the vehicle moves from `d1` by
/// `(v1 + w1) * dt`, computed from the geometry directly.
pub fn angle_delta_geometric(d1: f64, v1: f64, w1: f64, scenario: &Scenario) -> f64 {
    let d2 = d1 + (v1 + w1) * scenario.dt;
    angles_from_position(d2, scenario).phi - angles_from_position(d1, scenario).phi
}

/// Wraps an angle to (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}
