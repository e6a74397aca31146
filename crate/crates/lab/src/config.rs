use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use ulat_core::convergence::{default_eps_grid, DEFAULT_HORIZON};
use ulat_core::rational::{self, Rational};

use crate::LabError;

pub const DEFAULT_SEED: u64 = 20_170_101;
pub const SEED_VAR: &str = "ULAT_SEED";
pub const HORIZON_VAR: &str = "ULAT_HORIZON";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Md,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(LabError::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Everything that determines a report. Two runs with equal configs produce
/// byte-identical output (timings are opt-in).
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub seed: u64,
    pub horizon: u64,
    pub eps_grid: Vec<Rational>,
    pub format: Format,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            seed: DEFAULT_SEED,
            horizon: DEFAULT_HORIZON,
            eps_grid: default_eps_grid(),
            format: Format::Json,
            timings: false,
        }
    }
}

/// Keys accepted in a config file; they mirror the command-line flags.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    suites: Option<Vec<String>>,
    seed: Option<u64>,
    horizon: Option<u64>,
    eps_grid: Option<EpsGrid>,
    format: Option<Format>,
    timings: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EpsGrid {
    List(Vec<String>),
    Joined(String),
}

impl SuiteConfig {
    /// Overlays the keys present in a TOML document.
    pub fn apply_toml(&mut self, text: &str) -> Result<(), LabError> {
        let file: FileConfig = toml::from_str(text).map_err(|e| LabError::Config(e.to_string()))?;
        if let Some(s) = file.suites {
            self.suites = s;
        }
        if let Some(s) = file.seed {
            self.seed = s;
        }
        if let Some(h) = file.horizon {
            self.horizon = check_horizon(h)?;
        }
        if let Some(g) = file.eps_grid {
            self.eps_grid = match g {
                EpsGrid::Joined(s) => parse_eps_grid(&s)?,
                EpsGrid::List(items) => parse_eps_grid(&items.join(","))?,
            };
        }
        if let Some(f) = file.format {
            self.format = f;
        }
        if let Some(t) = file.timings {
            self.timings = t;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
        self.apply_toml(&text)
    }

    /// Applies `ULAT_SEED` and `ULAT_HORIZON` from `get`.
    pub fn apply_env(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<(), LabError> {
        if let Some(v) = get(SEED_VAR) {
            self.seed = parse_env(SEED_VAR, &v)?;
        }
        if let Some(v) = get(HORIZON_VAR) {
            self.horizon = check_horizon(parse_env(HORIZON_VAR, &v)?)?;
        }
        Ok(())
    }
}

fn parse_env(var: &str, value: &str) -> Result<u64, LabError> {
    value.trim().parse().map_err(|_| LabError::Config(format!("{var}={value:?} is not a non-negative integer")))
}

pub fn check_horizon(h: u64) -> Result<u64, LabError> {
    if h < 2 {
        return Err(LabError::Config(format!("horizon must be at least 2, got {h}")));
    }
    Ok(h)
}

/// Comma-separated positive rationals, e.g. `1/2,1/4,1/100`.
pub fn parse_eps_grid(s: &str) -> Result<Vec<Rational>, LabError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let q = rational::parse(part).map_err(|e| LabError::Config(format!("ε-grid entry `{part}`: {e}")))?;
        if q <= Rational::from_integer(0.into()) {
            return Err(LabError::Config(format!("ε-grid entry `{part}` is not positive")));
        }
        out.push(q);
    }
    if out.is_empty() {
        return Err(LabError::Config("empty ε-grid".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ulat_core::rational::ratio;

    #[test]
    fn toml_overlay() {
        let mut c = SuiteConfig::default();
        c.apply_toml("suites = [\"ex\"]\nseed = 9\nhorizon = 300\neps-grid = \"1/2, 1/8\"\nformat = \"md\"\n").unwrap();
        assert_eq!(c.suites, vec!["ex"]);
        assert_eq!((c.seed, c.horizon, c.format), (9, 300, Format::Md));
        assert_eq!(c.eps_grid, vec![ratio(1, 8), ratio(1, 2)]);
        c.apply_toml("eps-grid = [\"1/3\"]").unwrap();
        assert_eq!(c.eps_grid, vec![ratio(1, 3)]);
        assert!(c.apply_toml("sed = 3").is_err());
        assert!(c.apply_toml("horizon = 1").is_err());
    }

    #[test]
    fn env_overrides() {
        let mut c = SuiteConfig::default();
        c.apply_env(|k| (k == SEED_VAR).then(|| "17".to_string())).unwrap();
        assert_eq!((c.seed, c.horizon), (17, DEFAULT_HORIZON));
        c.apply_env(|k| (k == HORIZON_VAR).then(|| "64".to_string())).unwrap();
        assert_eq!(c.horizon, 64);
        assert!(c.apply_env(|_| Some("x".into())).is_err());
    }

    #[test]
    fn eps_grid_parsing() {
        assert_eq!(parse_eps_grid("1/4,1/2,1/4").unwrap(), vec![ratio(1, 4), ratio(1, 2)]);
        assert!(parse_eps_grid("0").is_err());
        assert!(parse_eps_grid("-1/2").is_err());
        assert!(parse_eps_grid(" , ").is_err());
        assert!(parse_eps_grid("a").is_err());
    }
}
