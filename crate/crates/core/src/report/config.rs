//! Flat TOML configuration for `full-report`.
//!
//! Every key sits at the top level; grids are arrays of numbers or pairs:
//!
//! ```toml
//! tol_claim = 1e-9
//! z_grid = [[3.0, 0.0], [2.5, 1.0]]
//! km_pairs = [[2, 3], [2, 5]]
//! formats = ["json", "csv", "md"]
//! ```

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::precision::{PrecisionPolicy, FACTORIAL_CAP};

/// Overrides `output_dir` when set.
pub const OUTPUT_DIR_ENV: &str = "ZETA_AUDIT_OUT";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    pub working_digits: u32,
    pub series_terms: u32,
    pub tol_ref: f64,
    pub tol_claim: f64,
    pub max_imag: f64,
    pub relation_fallback: bool,

    /// `[re, im]` points with `Re Z > 1` for the ordinary closed forms and probes.
    pub z_grid: Vec<[f64; 2]>,
    /// Points for the eta-based continuation into the strip.
    pub strip_grid: Vec<[f64; 2]>,
    /// Points for the functional-equation continuation.
    pub reflection_grid: Vec<[f64; 2]>,
    pub n_set: Vec<u32>,
    pub km_pairs: Vec<[u32; 2]>,
    pub t_min: i32,
    pub t_max: i32,
    /// `n` values used when auditing zero candidates.
    pub zero_n: Vec<u32>,

    pub identity_n: Vec<u32>,
    pub identity_k_max: u32,
    pub identity_samples: u32,
    /// Bound on `|a|` and `|d|` for sampled progressions.
    pub identity_radius: f64,
    pub seed: u64,

    pub output_dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        let p = PrecisionPolicy::default();
        Self {
            working_digits: p.working_digits,
            series_terms: p.series_terms,
            tol_ref: p.tol_ref,
            tol_claim: p.tol_claim,
            max_imag: p.max_imag,
            relation_fallback: p.relation_fallback,
            z_grid: vec![[2.0, 0.0], [3.0, 0.0], [4.0, 0.0], [2.5, 1.0], [1.5, -3.0], [3.0, 10.0]],
            strip_grid: vec![[0.5, 3.0], [0.25, 0.0], [0.75, -2.0], [0.5, 14.134725]],
            reflection_grid: vec![[-0.5, 0.0], [-1.0, 0.0], [-1.5, 2.0], [-3.0, 0.0]],
            n_set: vec![3, 4, 5],
            km_pairs: vec![[2, 3], [2, 5], [3, 4]],
            t_min: -8,
            t_max: 8,
            zero_n: vec![2, 3],
            identity_n: vec![3, 4, 5, 6],
            identity_k_max: 40,
            identity_samples: 100,
            identity_radius: 2.0,
            seed: 20_240_917,
            output_dir: PathBuf::from("audit-report"),
            formats: vec![Format::Json, Format::Csv, Format::Md],
        }
    }
}

impl AuditConfig {
    pub fn policy(&self) -> PrecisionPolicy {
        PrecisionPolicy {
            working_digits: self.working_digits,
            series_terms: self.series_terms,
            tol_ref: self.tol_ref,
            tol_claim: self.tol_claim,
            max_imag: self.max_imag,
            relation_fallback: self.relation_fallback,
        }
    }

    pub fn from_toml_str(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: AuditConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.to_string().trim_end().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text, &path.display().to_string())
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config fields are all representable in TOML")
    }

    /// SHA-256 of the canonical TOML rendering.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_toml_string().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// `output_dir`, unless the environment override is set.
    pub fn resolved_output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output_dir.clone(),
        }
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }

    pub fn z_points(&self) -> Vec<Complex64> {
        to_complex(&self.z_grid)
    }

    pub fn strip_points(&self) -> Vec<Complex64> {
        to_complex(&self.strip_grid)
    }

    pub fn reflection_points(&self) -> Vec<Complex64> {
        to_complex(&self.reflection_grid)
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.km_pairs.iter().map(|p| (p[0], p[1])).collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        self.policy().validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.formats.is_empty() {
            return invalid("formats must name at least one of json, csv, md".into());
        }
        for (name, grid) in [
            ("z_grid", &self.z_grid),
            ("strip_grid", &self.strip_grid),
            ("reflection_grid", &self.reflection_grid),
        ] {
            if grid.is_empty() {
                return invalid(format!("{name} is empty"));
            }
            if grid.iter().flatten().any(|v| !v.is_finite()) {
                return invalid(format!("{name} contains a non-finite value"));
            }
        }
        if let Some(z) = self.z_grid.iter().find(|z| !(z[0] > 1.0)) {
            return invalid(format!("z_grid point [{}, {}] needs Re Z > 1", z[0], z[1]));
        }
        if self.km_pairs.len() < 2 {
            return invalid("km_pairs needs at least two pairs for the uniqueness probe".into());
        }
        for &[k, m] in &self.km_pairs {
            if k == m || k < 2 || m < 2 {
                return invalid(format!("km pair [{k}, {m}] needs distinct anchors >= 2"));
            }
        }
        check_n_set("n_set", &self.n_set, 3)?;
        check_n_set("zero_n", &self.zero_n, 2)?;
        check_n_set("identity_n", &self.identity_n, 3)?;
        if self.t_min > self.t_max {
            return invalid(format!("empty t range {}..{}", self.t_min, self.t_max));
        }
        if self.identity_k_max == 0 || self.identity_samples == 0 {
            return invalid("identity_k_max and identity_samples must be positive".into());
        }
        if !(self.identity_radius.is_finite() && self.identity_radius > 0.0) {
            return invalid(format!("identity_radius = {} must be positive", self.identity_radius));
        }
        Ok(())
    }
}

fn check_n_set(name: &str, values: &[u32], min: u32) -> Result<(), ConfigError> {
    if values.is_empty() {
        return Err(ConfigError::Invalid(format!("{name} is empty")));
    }
    if let Some(n) = values.iter().find(|&&n| n < min || n > FACTORIAL_CAP) {
        return Err(ConfigError::Invalid(format!("{name} entry {n} outside {min}..={FACTORIAL_CAP}")));
    }
    Ok(())
}

fn to_complex(grid: &[[f64; 2]]) -> Vec<Complex64> {
    grid.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}
