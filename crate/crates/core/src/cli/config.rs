//! TOML run configuration.
//!
//! ```toml
//! [lattice]
//! dims = [40]
//! boundary = "periodic"        # or "open"
//!
//! [model]
//! t = 1.0
//! delta = 1.0
//! gamma = 0.7                  # single point, or:
//! gamma_grid = { min = 0.1, max = 100.0, points = 31, spacing = "log" }
//!
//! [scan]                       # optional
//! family = "blocks"             # "exhaustive" | "custom"
//! block_cap = 4
//! exhaustive_cap = 14
//! record_modes = false
//! custom = [[0], [0, 1]]       # flipped sites, family = "custom" only
//!
//! [output]                     # optional
//! path = "out.csv"             # stdout when absent
//! format = "csv"               # or "json"
//! precision = 12               # significant digits
//!
//! [oracle]                     # optional
//! cap = 6
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::{self, Family, DEFAULT_BLOCK_CAP, EXHAUSTIVE_CAP};
use crate::lattice::{build_lattice, LatticeGraph, LatticeSpec};
use crate::oracle::DEFAULT_ORACLE_CAP;
use crate::sector::{DirectionCouplings, ModelParams, SectorConfig};

pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub lattice: LatticeSpec,
    pub model: ModelSection,
    #[serde(default)]
    pub scan: ScanSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub oracle: OracleSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub t: f64,
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bond_overrides: Option<Vec<DirectionCouplings>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Log => gap::log_grid(self.min, self.max, self.points),
            Spacing::Linear => gap::linear_grid(self.min, self.max, self.points),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.min > 0.0) || !self.max.is_finite() || (self.points > 1 && !(self.max > self.min)) {
            return Err(Error::Config(format!(
                "gamma_grid needs 0 < min < max, got min = {}, max = {}",
                self.min, self.max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    #[default]
    Blocks,
    Exhaustive,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanSection {
    pub family: FamilyKind,
    pub block_cap: usize,
    pub exhaustive_cap: usize,
    pub record_modes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub custom: Option<Vec<Vec<usize>>>,
}

impl Default for ScanSection {
    fn default() -> Self {
        Self {
            family: FamilyKind::Blocks,
            block_cap: DEFAULT_BLOCK_CAP,
            exhaustive_cap: EXHAUSTIVE_CAP,
            record_modes: false,
            custom: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: Format,
    pub precision: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { path: None, format: Format::Csv, precision: DEFAULT_PRECISION }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSection {
    pub cap: usize,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self { cap: DEFAULT_ORACLE_CAP }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        self.lattice.validate()?;
        self.params_without_gamma().validate_for(&self.graph()?)?;
        if self.model.gamma.is_none() && self.model.gamma_grid.is_none() {
            return Err(Error::Config("model needs gamma or gamma_grid".into()));
        }
        if let Some(g) = self.model.gamma {
            if !(g >= 0.0) || !g.is_finite() {
                return Err(Error::Config(format!("gamma must be finite and non-negative, got {g}")));
            }
        }
        if let Some(grid) = &self.model.gamma_grid {
            grid.validate()?;
        }
        if !(1..=17).contains(&self.output.precision) {
            return Err(Error::Config(format!(
                "precision must be between 1 and 17, got {}",
                self.output.precision
            )));
        }
        if self.scan.exhaustive_cap > EXHAUSTIVE_CAP {
            return Err(Error::Config(format!("exhaustive_cap may not exceed {EXHAUSTIVE_CAP}")));
        }
        if self.scan.block_cap == 0 {
            return Err(Error::Config("block_cap must be at least 1".into()));
        }
        match (self.scan.family, &self.scan.custom) {
            (FamilyKind::Custom, None) => {
                return Err(Error::Config("family = \"custom\" needs a custom list".into()))
            }
            (FamilyKind::Blocks | FamilyKind::Exhaustive, Some(_)) => {
                return Err(Error::Config("custom list given for a non-custom family".into()))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn graph(&self) -> Result<LatticeGraph> {
        build_lattice(&self.lattice)
    }

    fn params_without_gamma(&self) -> ModelParams {
        let p = ModelParams::new(self.model.t, self.model.delta, self.model.gamma.unwrap_or(0.0));
        match &self.model.bond_overrides {
            Some(o) => p.with_overrides(o.clone()),
            None => p,
        }
    }

    /// Parameters at the single configured `gamma`.
    pub fn params(&self) -> Result<ModelParams> {
        if self.model.gamma.is_none() {
            return Err(Error::Config("this command needs model.gamma".into()));
        }
        Ok(self.params_without_gamma())
    }

    /// Parameters with `gamma` left to the caller (scans).
    pub fn scan_params(&self) -> ModelParams {
        self.params_without_gamma()
    }

    /// The grid when present, otherwise the single `gamma`.
    pub fn gamma_grid(&self) -> Vec<f64> {
        match (&self.model.gamma_grid, self.model.gamma) {
            (Some(grid), _) => grid.values(),
            (None, Some(g)) => vec![g],
            (None, None) => vec![],
        }
    }

    pub fn family(&self, n_sites: usize) -> Result<Family> {
        match self.scan.family {
            FamilyKind::Blocks => Ok(Family::Blocks { block_cap: self.scan.block_cap }),
            FamilyKind::Exhaustive => {
                if n_sites > self.scan.exhaustive_cap {
                    return Err(Error::Config(format!(
                        "exhaustive family limited to {} sites, lattice has {n_sites}",
                        self.scan.exhaustive_cap
                    )));
                }
                Ok(Family::Exhaustive)
            }
            FamilyKind::Custom => {
                let lists = self.scan.custom.as_deref().unwrap_or_default();
                let configs = lists
                    .iter()
                    .map(|sites| SectorConfig::from_flipped(n_sites, sites))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Family::Custom(configs))
            }
        }
    }
}
