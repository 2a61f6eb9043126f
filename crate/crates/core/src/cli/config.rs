use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::SweepSpec;
use crate::error::{Error, Result};
use crate::model::{Grid, SystemParams};
use crate::sim::{Scenario, SimConfig};

pub const DEFAULT_INTERVALS: usize = 128;

fn default_intervals() -> usize {
    DEFAULT_INTERVALS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_intervals")]
    pub n_intervals: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_intervals: DEFAULT_INTERVALS }
    }
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    /// Write the long-format `states.csv`.
    #[serde(default = "yes")]
    pub states: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: default_dir(), states: true }
    }
}

/// Everything one run needs. Unknown keys are rejected at every level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: SystemParams,
    pub scenario: Scenario,
    #[serde(default)]
    pub sim: SimConfig,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate(None)?;
        self.sim.validate()?;
        let grid = self.grid()?;
        self.scenario.validate(&grid)?;
        if let Some(s) = &self.sweep {
            s.validate()?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.n_intervals)
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    RunConfig::from_json(&text).map_err(|e| match e {
        Error::Json(j) => Error::Config(format!("{}: {j}", path.display())),
        other => other,
    })
}
