// One vehicle pass tracked by both filters on the same truth and noise.

use beamtrack::harness::trial::{track, OperatingPoint, TrialSetup};
use beamtrack::harness::{ExperimentConfig, FilterKind};

pub fn run_example(trial: u64) -> beamtrack::Result<()> {
    let cfg = ExperimentConfig {
        n_blocks: 200,
        ..ExperimentConfig::default()
    };
    let op = OperatingPoint {
        snr_db: 5.0,
        speed_kmh: 60.0,
    };
    let setup = TrialSetup::new(&cfg, op)?;
    let truth = setup.truth(cfg.seed, trial, cfg.n_blocks);
    let proposed = track(FilterKind::Proposed, &setup, &truth);
    let baseline = track(FilterKind::Baseline, &setup, &truth);

    println!("block  distance(m)  speed(m/s)  |phi err| proposed(deg)  baseline(deg)");
    for k in (0..cfg.n_blocks).step_by(20) {
        let (ts, _) = &truth.blocks[k];
        println!(
            "{:>5}  {:>11.3}  {:>10.3}  {:>22.3}  {:>13.3}",
            k + 1,
            ts.d,
            ts.v,
            proposed.phi_err[k].to_degrees(),
            baseline.phi_err[k].to_degrees()
        );
    }
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    let trial = std::env::args().nth(1).map_or(0, |s| s.parse().expect("trial index"));
    run_example(trial)
}
