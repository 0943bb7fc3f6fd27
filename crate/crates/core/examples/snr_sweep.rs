// Transmit-angle RMSE against block index at 0, 5 and 10 dB, with the
// block at which each curve crosses half the beamwidth.
//
// `cargo run --release --example snr_sweep -- [trials]`

use beamtrack::harness::{run_sweep, ExperimentConfig};

pub fn run_example(trials: usize) -> beamtrack::Result<()> {
    let cfg = ExperimentConfig {
        n_trials: trials,
        ..ExperimentConfig::fig2()
    };
    let results = run_sweep(&cfg)?;
    let threshold = results.cells[0].curve.threshold;
    println!("threshold {:.3} deg, {} trials", threshold.to_degrees(), trials);
    println!("snr_db  rmse@50  rmse@100  rmse@200 (deg)  crossing");
    for c in &results.cells {
        let r = &c.curve.rmse_phi;
        println!(
            "{:>6}  {:>7.3}  {:>8.3}  {:>14.3}  {}",
            c.snr_db,
            r[49].to_degrees(),
            r[99].to_degrees(),
            r[199].to_degrees(),
            c.curve.crossing.map_or("-".into(), |b| b.to_string())
        );
    }
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    let trials = std::env::args().nth(1).map_or(3000, |s| s.parse().expect("trial count"));
    run_example(trials)
}
