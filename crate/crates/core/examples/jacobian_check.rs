// Closed-form observation Jacobian against central finite differences.

use beamtrack::array_channel::measure_double_sum;
use beamtrack::ekf::{jacobian_gain, jacobian_position, jacobian_velocity, StateVector};
use beamtrack::geometry::angles_from_position;
use beamtrack::{BeamPointing, Link, Scenario};

pub fn run_example() -> beamtrack::Result<()> {
    let scenario = Scenario::default();
    let link = Link::symmetric(16, scenario);
    let x = StateVector::new(10.0, 16.667, 0.8, -0.3);
    let at = angles_from_position(x.d + x.v * scenario.dt + 0.2, &scenario);
    let beams = BeamPointing {
        theta_bar: at.theta,
        phi_bar: at.phi,
    };

    let g = |y: StateVector| measure_double_sum(y.gain(), y.d, y.v, beams, &link);
    let h = 1e-6;
    let hv = h / scenario.dt;
    let fd = [
        (g(StateVector { d: x.d + h, ..x }) - g(StateVector { d: x.d - h, ..x })) / (2.0 * h),
        (g(StateVector { v: x.v + hv, ..x }) - g(StateVector { v: x.v - hv, ..x })) / (2.0 * hv),
        (g(StateVector { alpha_re: x.alpha_re + h, ..x }) - g(StateVector { alpha_re: x.alpha_re - h, ..x })) / (2.0 * h),
        (g(StateVector { alpha_im: x.alpha_im + h, ..x }) - g(StateVector { alpha_im: x.alpha_im - h, ..x })) / (2.0 * h),
    ];
    let (gr, gi) = jacobian_gain(&x, beams, &link);
    let analytic = [jacobian_position(&x, beams, &link), jacobian_velocity(&x, beams, &link), gr, gi];

    for ((name, a), f) in ["d", "v", "alpha_re", "alpha_im"].iter().zip(analytic).zip(fd) {
        println!(
            "dz/d{name:<9} analytic {:+.8e} {:+.8e}j   finite diff {:+.8e} {:+.8e}j   rel err {:.1e}",
            a.re,
            a.im,
            f.re,
            f.im,
            (a - f).norm() / f.norm()
        );
    }
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    run_example()
}
