//! Run configuration: seed, Monte Carlo size, tolerance overrides, output
//! format and the `(α, β, λ)` grid.
//!
//! The on-disk form is flat `key = value` text; `#` starts a comment and
//! grids are comma lists.
//!
//! ```text
//! seed = 42
//! mc_samples = 1000000
//! format = json
//! alphas = 0.5, 1, 2
//! betas = 0.5, 1, 3
//! lambdas = 0.1, 0.25, 0.45
//! tolerance.moments = 1e-7
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::distribution::DistParams;
use crate::error::{Error, Result};

/// Smallest accepted Monte Carlo sample count.
pub const MIN_MC_SAMPLES: usize = 1_000;

/// Environment variable naming the default config file.
pub const CONFIG_ENV_VAR: &str = "DEGAMMA_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Parse(format!(
                "unknown output format {other:?} (expected json or csv)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterGrid {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub lambdas: Vec<f64>,
}

impl Default for ParameterGrid {
    fn default() -> Self {
        Self {
            alphas: vec![0.5, 1.0, 2.0],
            betas: vec![0.5, 1.0, 3.0],
            lambdas: vec![0.1, 0.25, 0.45],
        }
    }
}

impl ParameterGrid {
    /// Every valid combination, λ outermost; combinations with `α ≥ 1/λ`
    /// are skipped.
    pub fn cells(&self) -> Vec<DistParams> {
        let mut cells = Vec::new();
        for &lambda in &self.lambdas {
            for &alpha in &self.alphas {
                for &beta in &self.betas {
                    if let Ok(p) = DistParams::new(alpha, beta, lambda) {
                        cells.push(p);
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub mc_samples: usize,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub output_format: OutputFormat,
    pub grid: ParameterGrid,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            mc_samples: 1_000_000,
            tolerance_overrides: BTreeMap::new(),
            output_format: OutputFormat::Json,
            grid: ParameterGrid::default(),
        }
    }
}

impl RunConfig {
    /// Defaults updated by the key-value text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!(
                    "line {}: expected key = value, got {raw:?}",
                    lineno + 1
                ))
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one key; `tolerance.<name>` keys become overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => self.seed = parse_number(key, value)?,
            "mc_samples" => self.mc_samples = parse_number(key, value)?,
            "format" | "output_format" => self.output_format = value.parse()?,
            "alphas" => self.grid.alphas = parse_list(key, value)?,
            "betas" => self.grid.betas = parse_list(key, value)?,
            "lambdas" => self.grid.lambdas = parse_list(key, value)?,
            _ => match key.strip_prefix("tolerance.") {
                Some(name) if !name.is_empty() => self.set_tolerance(name, value)?,
                _ => return Err(Error::Parse(format!("unknown config key {key:?}"))),
            },
        }
        Ok(())
    }

    pub fn set_tolerance(&mut self, name: &str, value: &str) -> Result<()> {
        let tol: f64 = parse_number(name, value)?;
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(Error::Parse(format!(
                "tolerance {name} must be a finite non-negative number, got {value}"
            )));
        }
        self.tolerance_overrides.insert(name.to_string(), tol);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.mc_samples < MIN_MC_SAMPLES {
            return Err(Error::Parse(format!(
                "mc_samples must be at least {MIN_MC_SAMPLES}, got {}",
                self.mc_samples
            )));
        }
        for (name, values) in [
            ("alphas", &self.grid.alphas),
            ("betas", &self.grid.betas),
            ("lambdas", &self.grid.lambdas),
        ] {
            if values.is_empty() {
                return Err(Error::Parse(format!("{name} must not be empty")));
            }
        }
        Ok(())
    }

    /// The override for `name`, or `default`.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerance_overrides
            .get(name)
            .copied()
            .unwrap_or(default)
    }
}

fn parse_number<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{key}: cannot parse {value:?}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|item| parse_number(key, item))
        .collect()
}
