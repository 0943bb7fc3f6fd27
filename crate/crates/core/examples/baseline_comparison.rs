// Kinematic tracker against the angle-state tracker at 0 dB. Both see the
// same truth trajectories and noise samples in every trial.
//
// `cargo run --release --example baseline_comparison -- [trials]`

use beamtrack::harness::{run_sweep, ExperimentConfig, FilterKind};

pub fn run_example(trials: usize) -> beamtrack::Result<()> {
    let cfg = ExperimentConfig {
        n_trials: trials,
        ..ExperimentConfig::fig4()
    };
    let results = run_sweep(&cfg)?;
    let get = |k| results.get(0.0, 60.0, k).expect("cell").curve.clone();
    let (p, b) = (get(FilterKind::Proposed), get(FilterKind::Baseline));
    println!("block  proposed(deg)  baseline(deg)");
    for k in [1, 5, 10, 25, 50, 100, 200] {
        println!(
            "{k:>5}  {:>13.3}  {:>13.3}",
            p.rmse_phi[k - 1].to_degrees(),
            b.rmse_phi[k - 1].to_degrees()
        );
    }
    match (p.crossing, b.crossing) {
        (Some(pc), Some(bc)) => println!(
            "crossings: proposed {pc}, baseline {bc}, improvement {:.0}%",
            100.0 * (pc as f64 / bc as f64 - 1.0)
        ),
        other => println!("crossings: {other:?}"),
    }
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    let trials = std::env::args().nth(1).map_or(3000, |s| s.parse().expect("trial count"));
    run_example(trials)
}
