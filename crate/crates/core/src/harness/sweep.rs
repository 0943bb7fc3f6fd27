use rayon::prelude::*;

use crate::error::{invalid, Result};

use super::config::{ExperimentConfig, FilterKind};
use super::curve::{mse_curve, tracking_threshold, MseCurve};
use super::trial::{track, OperatingPoint, TrialSetup, TrialTrace};

/// Result of one (snr, speed, filter) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub snr_db: f64,
    pub speed_kmh: f64,
    pub filter: FilterKind,
    pub curve: MseCurve,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResults {
    pub cells: Vec<CellResult>,
}

impl SweepResults {
    pub fn get(&self, snr_db: f64, speed_kmh: f64, filter: FilterKind) -> Option<&CellResult> {
        self.cells
            .iter()
            .find(|c| c.snr_db == snr_db && c.speed_kmh == speed_kmh && c.filter == filter)
    }
}

/// Traces of every trial at one operating point, for each requested filter,
/// in trial order. Trackers in the same trial share the truth trace.
pub fn run_cell_traces(
    cfg: &ExperimentConfig,
    op: OperatingPoint,
    kinds: &[FilterKind],
) -> Result<Vec<Vec<TrialTrace>>> {
    let setup = TrialSetup::new(cfg, op)?;
    let per_trial: Vec<Vec<TrialTrace>> = (0..cfg.n_trials as u64)
        .into_par_iter()
        .map(|t| {
            let trace = setup.truth(cfg.seed, t, cfg.n_blocks);
            kinds.iter().map(|&k| track(k, &setup, &trace)).collect()
        })
        .collect();
    Ok((0..kinds.len())
        .map(|i| per_trial.iter().map(|v| v[i].clone()).collect())
        .collect())
}

fn sweep(cfg: &ExperimentConfig) -> Result<SweepResults> {
    let threshold = tracking_threshold(cfg);
    let kinds = cfg.filter.kinds();
    let mut cells = Vec::new();
    for &snr_db in &cfg.snr_db {
        for &speed_kmh in &cfg.initial_speed_kmh {
            let op = OperatingPoint { snr_db, speed_kmh };
            let traces = run_cell_traces(cfg, op, kinds)?;
            for (&filter, t) in kinds.iter().zip(&traces) {
                cells.push(CellResult {
                    snr_db,
                    speed_kmh,
                    filter,
                    curve: mse_curve(t, threshold),
                });
            }
        }
    }
    Ok(SweepResults { cells })
}

/// Runs the full cross product of SNRs, speeds and filters.
///
/// Trials run in parallel; results are reduced in trial order so the output
/// does not depend on the number of workers.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResults> {
    cfg.validate()?;
    if cfg.workers == 0 {
        return sweep(cfg);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| invalid("workers", e.to_string()))?;
    pool.install(|| sweep(cfg))
}
