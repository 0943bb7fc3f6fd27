use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::config::ExperimentConfig;
use super::sweep::{CellResult, SweepResults};

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_owned(),
        source,
    }
}

pub fn curve_file_name(cell: &CellResult) -> String {
    format!(
        "curve_snr{}_speed{}_{}.csv",
        cell.snr_db, cell.speed_kmh, cell.filter
    )
}

fn write_curve(path: &Path, cell: &CellResult) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(["block", "rmse_phi_rad", "rmse_theta_rad"])
        .map_err(csv_err(path))?;
    for (i, (phi, theta)) in cell.curve.rmse_phi.iter().zip(&cell.curve.rmse_theta).enumerate() {
        w.write_record([(i + 1).to_string(), phi.to_string(), theta.to_string()])
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes one curve file per cell plus `summary.csv`, returning the paths in
/// the order written.
pub fn emit_csv(results: &SweepResults, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut written = Vec::new();
    for cell in &results.cells {
        let path = dir.join(curve_file_name(cell));
        write_curve(&path, cell)?;
        written.push(path);
    }

    let path = dir.join("summary.csv");
    let mut w = csv::Writer::from_path(&path).map_err(csv_err(&path))?;
    w.write_record(["snr_db", "speed_kmh", "filter", "crossing_block"])
        .map_err(csv_err(&path))?;
    for cell in &results.cells {
        let crossing = cell.curve.crossing.map(|c| c.to_string()).unwrap_or_default();
        w.write_record([
            cell.snr_db.to_string(),
            cell.speed_kmh.to_string(),
            cell.filter.to_string(),
            crossing,
        ])
        .map_err(csv_err(&path))?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    written.push(path);
    Ok(written)
}

/// Records the resolved config (seed included) as `manifest.txt`.
pub fn write_manifest(cfg: &ExperimentConfig, dir: &Path) -> Result<PathBuf> {
    let path = dir.join("manifest.txt");
    let body = format!("# resolved beamtrack configuration\n{}", cfg.to_kv());
    fs::write(&path, body).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_results_give_header_only_summary() {
        let dir = tempfile::tempdir().unwrap();
        let files = emit_csv(&SweepResults::default(), dir.path()).unwrap();
        assert_eq!(files.len(), 1);
        let text = fs::read_to_string(&files[0]).unwrap();
        assert_eq!(text, "snr_db,speed_kmh,filter,crossing_block\n");
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let err = emit_csv(&SweepResults::default(), &blocker.join("sub")).unwrap_err();
        assert!(err.to_string().contains("file"), "{err}");
    }
}
