//! Grid-world experiment harness: problem generation, the Dijkstra oracle,
//! sweeps over planners and thread budgets, and CSV/JSON reporting.

mod config;
mod experiment;
mod oracle;
mod problems;

use std::path::PathBuf;

use thiserror::Error;

pub use config::ExperimentConfig;
pub use experiment::{
    read_runs_csv, run_experiment, run_sweep, summarize, sweep_cells, write_outputs, CellSummary, ExperimentOutput,
    RunReport, SolvedPath, Summary,
};
pub use oracle::{dijkstra_costs, dijkstra_oracle};
pub use problems::{generate_problems, ProblemInstance};

use crate::grid2d::MapError;
use crate::planner::PlanError;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("map {path}: {source}")]
    Map { path: PathBuf, source: MapError },
    #[error("map `{map}` has no solvable start/goal pair")]
    NoFeasiblePair { map: String },
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}
