// The pilot observation computed two ways: from explicit steering vectors
// with independent angles, and as the double sum over element pairs written
// in the vehicle's position and velocity. They agree to rounding.

use beamtrack::array_channel::{measure_double_sum, measure_inner_product};
use beamtrack::geometry::angles_from_position;
use beamtrack::{BeamPointing, ComplexGain, Link, Scenario};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> beamtrack::Result<()> {
    let scenario = Scenario::default();
    let link = Link::symmetric(16, scenario);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for i in 0..10 {
        let (d, v) = (rng.gen_range(1.0..20.0), rng.gen_range(5.0..30.0));
        let gain = ComplexGain::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let at = angles_from_position(d + v * scenario.dt, &scenario);
        let beams = BeamPointing {
            theta_bar: at.theta + rng.gen_range(-0.05..0.05),
            phi_bar: at.phi + rng.gen_range(-0.05..0.05),
        };
        let zi = measure_inner_product(gain, at.theta, at.phi, beams, &link.rx, &link.tx, link.pilot);
        let zd = measure_double_sum(gain, d, v, beams, &link);
        let err = (zi - zd).norm();
        worst = worst.max(err);
        println!("case {i}: inner {:+.6} {:+.6}j  double-sum {:+.6} {:+.6}j  |diff| {err:.1e}", zi.re, zi.im, zd.re, zd.im);
    }
    println!("largest difference {worst:.1e}");
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    run_example()
}
