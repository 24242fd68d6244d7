//! Campaign configuration: defaults, an optional TOML file, command-line
//! overrides and the `ELLU2_SEED` environment variable.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::elliptic::ModulusParams;
use crate::error::{Error, Result};

/// Environment variable overriding the seed.
pub const SEED_ENV: &str = "ELLU2_SEED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CampaignConfig {
    pub p: f64,
    pub q: f64,
    pub seed: u64,
    /// Sample count applied to every check without a per-check entry.
    pub samples: Option<usize>,
    /// Tolerance applied to every check without a per-check entry.
    pub tol: Option<f64>,
    /// Largest corepresentation dimension minus one in the matrix pairing checks.
    #[serde(alias = "max-mn")]
    pub max_mn: i32,
    pub json: Option<PathBuf>,
    pub per_check_samples: BTreeMap<String, usize>,
    pub per_check_tol: BTreeMap<String, f64>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            p: 0.2,
            q: 0.5,
            seed: 0,
            samples: None,
            tol: None,
            max_mn: 3,
            json: None,
            per_check_samples: BTreeMap::new(),
            per_check_tol: BTreeMap::new(),
        }
    }
}

impl CampaignConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Replaces the seed with `ELLU2_SEED` when set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not a u64")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        ModulusParams::new(self.p, self.q)?;
        let bad_count = |n: usize| n == 0;
        let bad_tol = |t: f64| !t.is_finite() || t <= 0.0;
        if self.samples.is_some_and(bad_count) || self.per_check_samples.values().any(|&n| bad_count(n)) {
            return Err(Error::Config("sample counts must be at least 1".into()));
        }
        if self.tol.is_some_and(bad_tol) || self.per_check_tol.values().any(|&t| bad_tol(t)) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if !(0..=6).contains(&self.max_mn) {
            return Err(Error::Config("max_mn must lie in 0..=6".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModulusParams> {
        ModulusParams::new(self.p, self.q)
    }

    pub fn samples_for(&self, id: &str, default: usize) -> usize {
        self.per_check_samples
            .get(id)
            .copied()
            .or(self.samples)
            .unwrap_or(default)
    }

    pub fn tol_for(&self, id: &str, default: f64) -> f64 {
        self.per_check_tol.get(id).copied().or(self.tol).unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_and_per_check_keys() {
        let cfg = CampaignConfig::from_toml_str(
            r#"
            p = 0.3
            q = 0.4
            seed = 9
            samples = 20
            [per_check_tol]
            qdybe-elliptic = 1e-9
            "#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.samples_for("theta-inversion", 200), 20);
        assert_eq!(cfg.tol_for("qdybe-elliptic", 1e-10), 1e-9);
        assert_eq!(cfg.tol_for("theta-inversion", 1e-12), 1e-12);
    }

    #[test]
    fn rejects_invalid_values() {
        assert!(CampaignConfig::from_toml_str("p = 1.5").is_err());
        assert!(CampaignConfig::from_toml_str("samples = 0").is_err());
        assert!(CampaignConfig::from_toml_str("tol = -1.0").is_err());
        assert!(CampaignConfig::from_toml_str("bogus = 1").is_err());
    }
}
