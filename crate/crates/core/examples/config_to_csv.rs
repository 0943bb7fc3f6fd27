// Runs a sweep described by a `key=value` config file and writes the RMSE
// curves, summary and manifest.
//
// `cargo run --release --example config_to_csv -- experiment.cfg out/`

use std::path::Path;

use beamtrack::harness::{emit_csv, run_sweep, write_manifest, ExperimentConfig};

pub fn run_example(config_text: &str, out: &Path) -> beamtrack::Result<()> {
    let cfg = ExperimentConfig::parse(config_text)?;
    let results = run_sweep(&cfg)?;
    for path in emit_csv(&results, out)? {
        println!("wrote {}", path.display());
    }
    println!("wrote {}", write_manifest(&cfg, out)?.display());
    Ok(())
}

fn main() -> beamtrack::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(&path).map_err(|source| beamtrack::Error::Io {
            path: path.into(),
            source,
        })?,
        None => "n_trials=300\nsnr_db=0,10\nfilter=both\n".to_string(),
    };
    let out = args.next().unwrap_or_else(|| "out/config_to_csv".into());
    run_example(&text, Path::new(&out))
}
