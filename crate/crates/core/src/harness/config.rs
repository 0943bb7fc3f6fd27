//! Experiment configuration in a plain `key=value` text format.
//!
//! ```text
//! # comments and blank lines are ignored
//! n_trials=300
//! snr_db=0,5,10
//! filter=both
//! ```
//!
//! Omitted keys keep their defaults; unknown keys are rejected.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use crate::ekf::GainTransition;
use crate::error::{invalid, Error, Result};

/// Beamwidth scale that places the 0 dB loss-of-track crossing near block 99
/// under the default parameters.
pub const CALIBRATED_BEAMWIDTH_SCALE: f64 = 0.2647;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterKind {
    /// Position/velocity/gain extended Kalman filter.
    Proposed,
    /// Angle-state extended Kalman filter.
    Baseline,
}

impl FilterKind {
    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Proposed => "proposed",
            FilterKind::Baseline => "baseline",
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterSelection {
    Proposed,
    Baseline,
    Both,
}

impl FilterSelection {
    pub fn kinds(self) -> &'static [FilterKind] {
        match self {
            FilterSelection::Proposed => &[FilterKind::Proposed],
            FilterSelection::Baseline => &[FilterKind::Baseline],
            FilterSelection::Both => &[FilterKind::Proposed, FilterKind::Baseline],
        }
    }
}

impl FromStr for FilterSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "proposed" => Ok(Self::Proposed),
            "baseline" => Ok(Self::Baseline),
            "both" => Ok(Self::Both),
            _ => Err(format!("expected proposed|baseline|both, got `{s}`")),
        }
    }
}

impl fmt::Display for FilterSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Proposed => "proposed",
            Self::Baseline => "baseline",
            Self::Both => "both",
        })
    }
}

/// How the beamwidth behind the loss-of-track threshold is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamwidthModel {
    /// `scale * 2 / N` radians.
    Nominal,
    /// Half-power width of a broadside ULA, `0.891 lambda / (N spacing)`,
    /// times the scale.
    HalfPower,
}

impl FromStr for BeamwidthModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "nominal" => Ok(Self::Nominal),
            "half_power" => Ok(Self::HalfPower),
            _ => Err(format!("expected nominal|half_power, got `{s}`")),
        }
    }
}

impl fmt::Display for BeamwidthModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nominal => "nominal",
            Self::HalfPower => "half_power",
        })
    }
}

fn parse_gain_transition(s: &str) -> std::result::Result<GainTransition, String> {
    match s {
        "identity" => Ok(GainTransition::Identity),
        "correlated" => Ok(GainTransition::Correlated),
        _ => Err(format!("expected identity|correlated, got `{s}`")),
    }
}

fn gain_transition_name(g: GainTransition) -> &'static str {
    match g {
        GainTransition::Identity => "identity",
        GainTransition::Correlated => "correlated",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_trials: usize,
    pub n_blocks: usize,
    pub snr_db: Vec<f64>,
    pub initial_speed_kmh: Vec<f64>,
    /// Block duration, seconds.
    pub dt: f64,
    /// Overpass height, meters.
    pub h: f64,
    pub n_antennas: usize,
    pub spacing_wavelengths: f64,
    pub rho: f64,
    /// Velocity perturbation standard deviation per block, m/s.
    pub sigma_w: f64,
    /// Initial transmit angle, degrees; sets the starting distance.
    pub initial_phi_deg: f64,
    /// Mean gain power the SNR is referred to; `sigma_n^2 = signal_power / 10^(snr/10)`.
    pub signal_power: f64,
    pub gain_transition: GainTransition,
    pub seed: u64,
    pub filter: FilterSelection,
    pub beamwidth_model: BeamwidthModel,
    pub beamwidth_scale: f64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_trials: 3000,
            n_blocks: 300,
            snr_db: vec![0.0],
            initial_speed_kmh: vec![60.0],
            dt: 1e-3,
            h: 3.0,
            n_antennas: 16,
            spacing_wavelengths: 0.5,
            rho: 0.995,
            sigma_w: 0.28,
            initial_phi_deg: 45.0,
            signal_power: 1.0,
            gain_transition: GainTransition::Identity,
            seed: 1,
            filter: FilterSelection::Proposed,
            beamwidth_model: BeamwidthModel::Nominal,
            beamwidth_scale: CALIBRATED_BEAMWIDTH_SCALE,
            workers: 0,
        }
    }
}

fn parse_list<T: FromStr>(value: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(|s| s.trim().parse::<T>().map_err(|e| format!("`{}`: {e}", s.trim())))
        .collect()
}

fn parse_one<T: FromStr>(value: &str) -> std::result::Result<T, String>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("`{value}`: {e}"))
}

fn join(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Parses a config file body on top of the defaults and validates it.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies the keys of a config file body to `self` without validating.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
                line: i + 1,
                reason: format!("expected key=value, got `{line}`"),
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|reason| Error::ConfigParse { line: i + 1, reason })?;
        }
        Ok(())
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Sets one key from its textual value. Used by the parser and by
    /// command-line overrides; call [`validate`](Self::validate) afterwards.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "n_trials" => self.n_trials = parse_one(value)?,
            "n_blocks" => self.n_blocks = parse_one(value)?,
            "snr_db" => self.snr_db = parse_list(value)?,
            "initial_speed_kmh" => self.initial_speed_kmh = parse_list(value)?,
            "dt" => self.dt = parse_one(value)?,
            "h" => self.h = parse_one(value)?,
            "n_antennas" => self.n_antennas = parse_one(value)?,
            "spacing_wavelengths" => self.spacing_wavelengths = parse_one(value)?,
            "rho" => self.rho = parse_one(value)?,
            "sigma_w" => self.sigma_w = parse_one(value)?,
            "initial_phi_deg" => self.initial_phi_deg = parse_one(value)?,
            "signal_power" => self.signal_power = parse_one(value)?,
            "gain_transition" => self.gain_transition = parse_gain_transition(value)?,
            "seed" => self.seed = parse_one(value)?,
            "filter" => self.filter = value.parse()?,
            "beamwidth_model" => self.beamwidth_model = value.parse()?,
            "beamwidth_scale" => self.beamwidth_scale = parse_one(value)?,
            "workers" => self.workers = parse_one(value)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(invalid("n_trials", "n_trials must be at least 1"));
        }
        if self.n_blocks == 0 {
            return Err(invalid("n_blocks", "n_blocks must be at least 1"));
        }
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| !s.is_finite()) {
            return Err(invalid("snr_db", "snr_db must list finite values"));
        }
        if self.initial_speed_kmh.is_empty() || self.initial_speed_kmh.iter().any(|s| !s.is_finite()) {
            return Err(invalid("initial_speed_kmh", "initial_speed_kmh must list finite values"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", "dt must be positive"));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(invalid("h", "h must be positive"));
        }
        if self.n_antennas < 2 {
            return Err(invalid("n_antennas", "n_antennas must be at least 2"));
        }
        if !(self.spacing_wavelengths > 0.0 && self.spacing_wavelengths.is_finite()) {
            return Err(invalid("spacing_wavelengths", "spacing_wavelengths must be positive"));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(invalid("rho", "rho must lie in (0,1]"));
        }
        if !(self.sigma_w >= 0.0 && self.sigma_w.is_finite()) {
            return Err(invalid("sigma_w", "sigma_w must be non-negative"));
        }
        if !(self.initial_phi_deg > 0.0 && self.initial_phi_deg <= 90.0) {
            return Err(invalid("initial_phi_deg", "initial_phi_deg must lie in (0,90]"));
        }
        if !(self.signal_power > 0.0 && self.signal_power.is_finite()) {
            return Err(invalid("signal_power", "signal_power must be positive"));
        }
        if !(self.beamwidth_scale > 0.0 && self.beamwidth_scale.is_finite()) {
            return Err(invalid("beamwidth_scale", "beamwidth_scale must be positive"));
        }
        Ok(())
    }

    /// The resolved configuration in the same `key=value` format the parser
    /// accepts.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k}={v}");
        };
        put("n_trials", self.n_trials.to_string());
        put("n_blocks", self.n_blocks.to_string());
        put("snr_db", join(&self.snr_db));
        put("initial_speed_kmh", join(&self.initial_speed_kmh));
        put("dt", self.dt.to_string());
        put("h", self.h.to_string());
        put("n_antennas", self.n_antennas.to_string());
        put("spacing_wavelengths", self.spacing_wavelengths.to_string());
        put("rho", self.rho.to_string());
        put("sigma_w", self.sigma_w.to_string());
        put("initial_phi_deg", self.initial_phi_deg.to_string());
        put("signal_power", self.signal_power.to_string());
        put("gain_transition", gain_transition_name(self.gain_transition).to_string());
        put("seed", self.seed.to_string());
        put("filter", self.filter.to_string());
        put("beamwidth_model", self.beamwidth_model.to_string());
        put("beamwidth_scale", self.beamwidth_scale.to_string());
        put("workers", self.workers.to_string());
        out
    }

    /// SNR sweep at 0, 5 and 10 dB.
    pub fn fig2() -> Self {
        Self {
            snr_db: vec![0.0, 5.0, 10.0],
            ..Self::default()
        }
    }

    /// Initial-speed sweep at 0 dB.
    pub fn fig3() -> Self {
        Self {
            initial_speed_kmh: vec![50.0, 60.0, 70.0, 80.0],
            ..Self::default()
        }
    }

    /// Same sweep as [`fig3`](Self::fig3), reported as crossing blocks.
    pub fn table1() -> Self {
        Self::fig3()
    }

    /// Proposed against baseline at 0 dB on shared truth.
    pub fn fig4() -> Self {
        Self {
            filter: FilterSelection::Both,
            ..Self::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let cfg = ExperimentConfig::parse("").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.n_antennas, 16);
        assert_eq!(cfg.rho, 0.995);
        assert_eq!(cfg.dt, 0.001);
        assert_eq!(cfg.h, 3.0);
        assert_eq!(cfg.initial_speed_kmh, vec![60.0]);
        assert_eq!(cfg.n_trials, 3000);
    }

    #[test]
    fn snr_list() {
        let cfg = ExperimentConfig::parse("# sweep\n\nsnr_db=0,5,10\n").unwrap();
        assert_eq!(cfg.snr_db, vec![0.0, 5.0, 10.0]);
    }

    #[test]
    fn rho_out_of_range() {
        let err = ExperimentConfig::parse("rho=1.5").unwrap_err();
        assert!(err.to_string().contains("rho must lie in (0,1]"), "{err}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = ExperimentConfig::parse("n_trials=10\nbogus=1\n").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 2, .. }), "{err}");
        let err = ExperimentConfig::parse("\n\nn_blocks=abc").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 3, .. }), "{err}");
        let err = ExperimentConfig::parse("filter").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 1, .. }));
    }

    #[test]
    fn kv_round_trips() {
        let mut cfg = ExperimentConfig::fig4();
        cfg.snr_db = vec![-2.5, 0.1];
        cfg.beamwidth_model = BeamwidthModel::HalfPower;
        cfg.gain_transition = GainTransition::Correlated;
        cfg.seed = u64::MAX;
        assert_eq!(ExperimentConfig::parse(&cfg.to_kv()).unwrap(), cfg);
    }
}
