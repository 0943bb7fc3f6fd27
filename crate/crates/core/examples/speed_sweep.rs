// Valid-tracking duration at 0 dB for initial speeds of 50 to 80 km/h.
//
// `cargo run --release --example speed_sweep -- [trials]`

use beamtrack::harness::{run_sweep, ExperimentConfig};

pub fn run_example(trials: usize) -> beamtrack::Result<()> {
    let cfg = ExperimentConfig {
        n_trials: trials,
        ..ExperimentConfig::table1()
    };
    let results = run_sweep(&cfg)?;
    println!("initial speed (km/h)  crossing block");
    for c in &results.cells {
        println!(
            "{:>20}  {}",
            c.speed_kmh,
            c.curve.crossing.map_or("-".into(), |b| b.to_string())
        );
    }
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    let trials = std::env::args().nth(1).map_or(3000, |s| s.parse().expect("trial count"));
    run_example(trials)
}
