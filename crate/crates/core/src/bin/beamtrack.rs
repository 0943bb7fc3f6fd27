use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use beamtrack::harness::{emit_csv, run_sweep, write_manifest, ExperimentConfig, FilterSelection};

#[derive(Parser)]
#[command(version, about = "Monte Carlo beam-tracking experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// key=value config file applied on top of the preset
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Base RNG seed; trial i uses stream i
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo trials per operating point
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Output directory [default: out/<subcommand>]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// proposed, baseline or both
    #[arg(long, global = true)]
    filter: Option<FilterSelection>,
    /// Extra key=value overrides, applied last
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Single sweep from the defaults and --config
    Run,
    /// SNR sweep, 0/5/10 dB
    Fig2,
    /// Initial-speed sweep, 50-80 km/h
    Fig3,
    /// Proposed against baseline at 0 dB
    Fig4,
    /// Crossing blocks of the speed sweep
    Table1,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::Fig2 => "fig2",
            Command::Fig3 => "fig3",
            Command::Fig4 => "fig4",
            Command::Table1 => "table1",
        }
    }

    fn preset(self) -> ExperimentConfig {
        match self {
            Command::Run => ExperimentConfig::default(),
            Command::Fig2 => ExperimentConfig::fig2(),
            Command::Fig3 => ExperimentConfig::fig3(),
            Command::Fig4 => ExperimentConfig::fig4(),
            Command::Table1 => ExperimentConfig::table1(),
        }
    }
}

fn resolve(cli: &Cli) -> Result<ExperimentConfig, String> {
    let mut cfg = cli.command.preset();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.apply_text(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = cli.trials {
        cfg.n_trials = trials;
    }
    if let Some(filter) = cli.filter {
        cfg.filter = filter;
    }
    for kv in &cli.overrides {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("--set expects KEY=VALUE, got `{kv}`"))?;
        cfg.set(k.trim(), v.trim())?;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("out").join(cli.command.name()));

    let result = run_sweep(&cfg).and_then(|results| {
        emit_csv(&results, &out)?;
        write_manifest(&cfg, &out)?;
        Ok(results)
    });
    match result {
        Ok(results) => {
            println!("snr_db  speed_kmh  filter    crossing_block");
            for c in &results.cells {
                let crossing = c.curve.crossing.map_or("-".to_string(), |b| b.to_string());
                println!("{:<7} {:<10} {:<9} {}", c.snr_db, c.speed_kmh, c.filter, crossing);
            }
            println!("wrote {}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
