// Fits the beamwidth scale so the 0 dB transmit-angle RMSE curve crosses
// half the beamwidth at a target block.
//
// ```text
// cargo run --release --example calibrate_beamwidth -- [target_block] [trials]
// ```

use beamtrack::harness::curve::beamwidth;
use beamtrack::harness::{run_sweep, ExperimentConfig};

/// Returns the fitted scale.
pub fn run_example(target: usize, trials: usize) -> beamtrack::Result<f64> {
    let cfg = ExperimentConfig {
        n_trials: trials,
        beamwidth_scale: 1.0,
        ..ExperimentConfig::default()
    };
    let results = run_sweep(&cfg)?;
    let rmse = &results.cells[0].curve.rmse_phi;
    assert!(target >= 2 && target <= rmse.len(), "target outside the simulated horizon");

    // The crossing lands on `target` for any threshold in
    // [rmse[target - 2], rmse[target - 1]); take the midpoint.
    let (lo, hi) = (rmse[target - 2], rmse[target - 1]);
    let threshold = 0.5 * (lo + hi);
    let scale = 2.0 * threshold / beamwidth(&cfg);
    println!("rmse at block {}: {:.6e} rad, block {}: {:.6e} rad", target - 1, lo, target, hi);
    println!("threshold {:.6e} rad ({:.4} deg)", threshold, threshold.to_degrees());
    println!("beamwidth_scale={scale:.4}");
    Ok(scale)
}

fn main() -> beamtrack::Result<()> {
    let mut args = std::env::args().skip(1);
    let target: usize = args.next().map_or(99, |s| s.parse().expect("target block"));
    let trials: usize = args.next().map_or(3000, |s| s.parse().expect("trial count"));
    run_example(target, trials).map(|_| ())
}
