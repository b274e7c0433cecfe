use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::grid2d::{load_movingai_file, GridMap, GridParams};
use crate::planner::PlannerKind;
use crate::search::PlannerConfig;

use super::BenchError;

fn default_scale() -> usize {
    1
}

fn default_true() -> bool {
    true
}

fn default_calibration_samples() -> usize {
    2000
}

/// Everything needed to reproduce one sweep. Stored as TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// MovingAI map files. Relative paths resolve against the config file.
    pub maps: Vec<PathBuf>,
    #[serde(default = "default_scale")]
    pub scale: usize,
    pub problems_per_map: usize,
    pub planners: Vec<PlannerKind>,
    /// Thread budgets; wA* always runs single-threaded, once.
    pub threads: Vec<usize>,
    pub w: f64,
    pub epsilon: f64,
    /// Target expensive:cheap mean evaluation-time ratio.
    pub rc: f64,
    pub timeout_s: f64,
    pub seed: u64,
    pub output: PathBuf,
    #[serde(default)]
    pub grid: GridParams,
    /// Run and discard one solve per (planner, threads) cell first.
    #[serde(default = "default_true")]
    pub warmup: bool,
    #[serde(default = "default_calibration_samples")]
    pub calibration_samples: usize,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, BenchError> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates a config file, resolving relative map and output
    /// paths against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, BenchError> {
        let path = path.as_ref();
        let mut cfg = Self::from_toml_str(&fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for m in &mut cfg.maps {
            if m.is_relative() {
                *m = base.join(&*m);
            }
        }
        if cfg.output.is_relative() {
            cfg.output = base.join(&cfg.output);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: &str| Err(BenchError::Config(msg.to_string()));
        if self.maps.is_empty() {
            return bad("at least one map is required");
        }
        if self.scale == 0 || self.problems_per_map == 0 {
            return bad("scale and problems_per_map must be >= 1");
        }
        if self.planners.is_empty() || self.threads.is_empty() || self.threads.contains(&0) {
            return bad("planners and threads must be non-empty, thread budgets >= 1");
        }
        if self.grid.step == 0 || self.grid.footprint == 0 {
            return bad("grid step and footprint must be >= 1");
        }
        if self.timeout_s.is_nan() || self.timeout_s <= 0.0 {
            return bad("timeout_s must be positive");
        }
        if self.rc.is_nan() || self.rc < 1.0 {
            return bad("rc must be >= 1");
        }
        self.planner_config(1)?;
        Ok(())
    }

    pub fn planner_config(&self, threads: usize) -> Result<PlannerConfig, BenchError> {
        Ok(PlannerConfig::new(self.w, self.epsilon, threads)
            .map_err(|e| BenchError::Config(e.to_string()))?
            .with_timeout(std::time::Duration::from_secs_f64(self.timeout_s)))
    }

    /// Loads every map and applies the scale factor.
    pub fn load_maps(&self) -> Result<Vec<Arc<GridMap>>, BenchError> {
        self.maps
            .iter()
            .map(|p| {
                let m = load_movingai_file(p).map_err(|e| BenchError::Map {
                    path: p.clone(),
                    source: e,
                })?;
                Ok(Arc::new(m.scale(self.scale)))
            })
            .collect()
    }
}
