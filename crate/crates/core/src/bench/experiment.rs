use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::grid2d::{ExpensiveDelay, GridDomain, GridMap, GridState};
use crate::planner::{PlannerKind, SearchStatus};
use crate::search::Cost;

use super::config::ExperimentConfig;
use super::problems::ProblemInstance;
use super::BenchError;

/// One planner run on one instance. Field order is the `runs.csv` column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub planner: PlannerKind,
    pub threads: usize,
    pub rc: f64,
    pub instance_id: usize,
    pub status: SearchStatus,
    pub time_s: f64,
    pub edge_evals: u64,
    pub expansions: u64,
    pub cost: Option<Cost>,
    pub oracle_cost: Cost,
}

impl RunReport {
    /// Unsolved runs are trivially within the bound.
    pub fn within_bound(&self, epsilon: f64) -> bool {
        match self.cost {
            Some(c) => c as f64 <= epsilon * self.oracle_cost as f64,
            None => true,
        }
    }
}

/// Means over the instances every cell of the sweep solved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub runs: usize,
    pub solved: usize,
    pub common: usize,
    pub mean_time_s: Option<f64>,
    pub mean_edge_evals: Option<f64>,
    pub mean_expansions: Option<f64>,
    pub mean_cost: Option<f64>,
}

/// planner → threads → summary.
pub type Summary = BTreeMap<String, BTreeMap<usize, CellSummary>>;

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Aggregates raw rows. A pure function of `reports` and their order.
pub fn summarize(reports: &[RunReport]) -> Summary {
    let mut cells: BTreeMap<(String, usize), Vec<&RunReport>> = BTreeMap::new();
    for r in reports {
        cells.entry((r.planner.name().to_string(), r.threads)).or_default().push(r);
    }
    let all_ids: BTreeSet<usize> = reports.iter().map(|r| r.instance_id).collect();
    let common: BTreeSet<usize> = all_ids
        .into_iter()
        .filter(|id| {
            cells.values().all(|rows| {
                rows.iter()
                    .any(|r| r.instance_id == *id && r.status == SearchStatus::Solved)
            })
        })
        .collect();

    let mut out = Summary::new();
    for ((planner, threads), rows) in cells {
        let kept: Vec<&RunReport> = rows
            .iter()
            .copied()
            .filter(|r| r.status == SearchStatus::Solved && common.contains(&r.instance_id))
            .collect();
        out.entry(planner).or_default().insert(
            threads,
            CellSummary {
                runs: rows.len(),
                solved: rows.iter().filter(|r| r.status == SearchStatus::Solved).count(),
                common: kept.len(),
                mean_time_s: mean(kept.iter().map(|r| r.time_s)),
                mean_edge_evals: mean(kept.iter().map(|r| r.edge_evals as f64)),
                mean_expansions: mean(kept.iter().map(|r| r.expansions as f64)),
                mean_cost: mean(kept.iter().map(|r| r.cost.unwrap_or(0) as f64)),
            },
        );
    }
    out
}

#[derive(Debug, Clone)]
pub struct SolvedPath {
    pub instance_id: usize,
    pub planner: PlannerKind,
    pub states: Vec<GridState>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub reports: Vec<RunReport>,
    pub summary: Summary,
    pub paths: Vec<SolvedPath>,
}

/// The (planner, threads) cells of a sweep, in run order. wA* gets a single
/// one-thread cell.
pub fn sweep_cells(config: &ExperimentConfig) -> Vec<(PlannerKind, usize)> {
    let mut cells = Vec::new();
    for &p in &config.planners {
        if p.is_parallel() {
            cells.extend(config.threads.iter().map(|&t| (p, t)));
        } else {
            cells.push((p, 1));
        }
    }
    cells
}

/// Runs every cell over every instance, sequentially, and aggregates.
/// Timeouts are recorded, not fatal.
pub fn run_sweep(
    config: &ExperimentConfig,
    maps: &[Arc<GridMap>],
    problems: &[ProblemInstance],
) -> Result<ExperimentOutput, BenchError> {
    config.validate()?;
    let delays: Vec<ExpensiveDelay> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let probe = GridDomain::new(Arc::clone(m), config.grid, GridState::new(0, 0));
            ExpensiveDelay::calibrate(&probe, config.rc, config.calibration_samples, config.seed ^ i as u64)
        })
        .collect();
    let domain_for = |p: &ProblemInstance| {
        GridDomain::new(Arc::clone(&maps[p.map_index]), config.grid, p.goal).with_delay(delays[p.map_index])
    };

    let mut reports = Vec::new();
    let mut paths = Vec::new();
    for (planner, threads) in sweep_cells(config) {
        let pc = config.planner_config(threads)?;
        if config.warmup {
            if let Some(p) = problems.first() {
                let d = domain_for(p);
                planner.plan(&d, d.state_id(p.start), &pc)?;
            }
        }
        for p in problems {
            let d = domain_for(p);
            let start = d.state_id(p.start);
            let t = Instant::now();
            let result = planner.plan(&d, start, &pc)?;
            let time_s = t.elapsed().as_secs_f64();
            if let Some(path) = &result.path {
                paths.push(SolvedPath {
                    instance_id: p.id,
                    planner,
                    states: path.states.iter().map(|&s| d.grid_state(s)).collect(),
                });
            }
            reports.push(RunReport {
                planner,
                threads,
                rc: config.rc,
                instance_id: p.id,
                status: result.status,
                time_s,
                edge_evals: result.stats.edge_evaluations,
                expansions: result.stats.state_expansions,
                cost: result.cost(),
                oracle_cost: p.oracle_cost,
            });
        }
    }
    let summary = summarize(&reports);
    Ok(ExperimentOutput {
        reports,
        summary,
        paths,
    })
}

/// Writes `runs.csv`, `summary.json` and `paths/<instance>_<planner>.txt`
/// under `dir`. A path file holds the last solved run of that planner on
/// that instance, one `x y` pair per line.
pub fn write_outputs(output: &ExperimentOutput, dir: &Path) -> Result<(), BenchError> {
    fs::create_dir_all(dir.join("paths"))?;
    let mut w = csv::Writer::from_path(dir.join("runs.csv"))?;
    for r in &output.reports {
        w.serialize(r)?;
    }
    w.flush()?;
    fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&output.summary)?)?;
    for p in &output.paths {
        let mut f = fs::File::create(dir.join("paths").join(format!("{}_{}.txt", p.instance_id, p.planner)))?;
        for s in &p.states {
            writeln!(f, "{} {}", s.x, s.y)?;
        }
    }
    Ok(())
}

pub fn read_runs_csv(path: &Path) -> Result<Vec<RunReport>, BenchError> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(BenchError::from)).collect()
}

/// `run_sweep` followed by `write_outputs` into `config.output`.
pub fn run_experiment(
    config: &ExperimentConfig,
    maps: &[Arc<GridMap>],
    problems: &[ProblemInstance],
) -> Result<ExperimentOutput, BenchError> {
    let out = run_sweep(config, maps, problems)?;
    write_outputs(&out, &config.output)?;
    Ok(out)
}
