// Array responses and the beam pattern seen by a single pilot.
//
// Prints the first few entries of a 16-element steering vector and the pilot
// gain `|w^H a_r a_t^H f|` as the beams are swept past the true direction.

use beamtrack::array_channel::{channel_matrix, measure_inner_product, steering_vector};
use beamtrack::geometry::angles_from_position;
use beamtrack::{ArrayConfig, BeamPointing, ComplexGain, Scenario};
use num_complex::Complex64;

pub fn run_example() -> beamtrack::Result<()> {
    let arr = ArrayConfig::new(16, 0.5, 1.0)?;
    let scenario = Scenario::default();
    let truth = angles_from_position(3.0, &scenario);
    println!(
        "vehicle at 3 m: theta = {:.1} deg, phi = {:.1} deg",
        truth.theta.to_degrees(),
        truth.phi.to_degrees()
    );

    let a_t = steering_vector(truth.phi, &arr);
    for (p, e) in a_t.iter().take(4).enumerate() {
        println!("a_t[{p}] = {:+.4} {:+.4}j", e.re, e.im);
    }

    let h = channel_matrix(ComplexGain::new(1.0, 0.0), truth.theta, truth.phi, &arr, &arr);
    let fro: f64 = h.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    println!("channel Frobenius norm {fro:.6}");

    println!("\npointing offset (deg)   |pilot gain|");
    for offset_deg in [0.0, 1.0, 2.0, 3.0, 5.0, 7.5, 10.0] {
        let off = f64::to_radians(offset_deg);
        let beams = BeamPointing {
            theta_bar: truth.theta - off,
            phi_bar: truth.phi + off,
        };
        let z = measure_inner_product(
            ComplexGain::new(1.0, 0.0),
            truth.theta,
            truth.phi,
            beams,
            &arr,
            &arr,
            Complex64::new(1.0, 0.0),
        );
        println!("{offset_deg:>10.1}            {:.4}", z.norm());
    }
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    run_example()
}
