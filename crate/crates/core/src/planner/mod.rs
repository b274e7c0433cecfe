//! The four planners: weighted A*, w-PA*SE, w-ePA*SE and w-GePA*SE.
//!
//! The three parallel planners share one coordinator/worker loop and differ
//! only in how the actions of an expanded state are treated:
//!
//! | planner | popped dummy edge                                        |
//! |---------|----------------------------------------------------------|
//! | PA*SE   | every action evaluated inline by the assigned worker     |
//! | ePA*SE  | every action pushed to OPEN as its own edge              |
//! | GePA*SE | cheap actions inline, expensive actions pushed to OPEN   |

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Domain, DomainError};
use crate::search::{BeQueue, Cost, Path, PlannerConfig, Priority, StateId, StateTable};

mod parallel;
mod wastar;

pub use parallel::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Solved,
    Exhausted,
    Timeout,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Solved => "solved",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::Timeout => "timeout",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchStats {
    pub wall_time: Duration,
    /// Number of `generate_successor` calls.
    pub edge_evaluations: u64,
    /// Number of states whose outgoing edges were expanded.
    pub state_expansions: u64,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub path: Option<Path>,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn cost(&self) -> Option<Cost> {
        self.path.as_ref().map(|p| p.cost)
    }

    pub fn is_solved(&self) -> bool {
        self.status == SearchStatus::Solved
    }
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// One evaluation of the pruned BE independence check during edge selection.
pub struct BeCheck<'a> {
    pub state: StateId,
    pub f: Priority,
    pub passed: bool,
    pub be: &'a BeQueue,
    pub records: &'a StateTable,
    pub epsilon: f64,
}

/// Instrumentation hooks. Called with the search lock held.
pub trait SearchObserver: Sync {
    fn be_check(&self, _check: &BeCheck<'_>) {}
    fn state_closed(&self, _state: StateId) {}
}

pub struct NoObserver;

impl SearchObserver for NoObserver {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlannerKind {
    #[serde(rename = "wastar")]
    WAStar,
    Pase,
    Epase,
    Gepase,
}

impl PlannerKind {
    pub const ALL: [PlannerKind; 4] = [
        PlannerKind::WAStar,
        PlannerKind::Pase,
        PlannerKind::Epase,
        PlannerKind::Gepase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::WAStar => "wastar",
            PlannerKind::Pase => "pase",
            PlannerKind::Epase => "epase",
            PlannerKind::Gepase => "gepase",
        }
    }

    /// wA* ignores the thread budget.
    pub fn is_parallel(self) -> bool {
        self != PlannerKind::WAStar
    }

    pub fn plan<D: Domain>(self, domain: &D, start: StateId, config: &PlannerConfig) -> Result<SearchResult, PlanError> {
        self.plan_observed(domain, start, config, &NoObserver)
    }

    pub fn plan_observed<D: Domain, O: SearchObserver>(
        self,
        domain: &D,
        start: StateId,
        config: &PlannerConfig,
        observer: &O,
    ) -> Result<SearchResult, PlanError> {
        match self {
            PlannerKind::WAStar => wastar::plan(domain, start, config, observer),
            PlannerKind::Pase => parallel::plan(domain, start, config, Strategy::Pase, observer),
            PlannerKind::Epase => parallel::plan(domain, start, config, Strategy::Epase, observer),
            PlannerKind::Gepase => parallel::plan(domain, start, config, Strategy::Gepase, observer),
        }
    }
}

impl fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown planner `{0}` (expected wastar, pase, epase or gepase)")]
pub struct UnknownPlanner(String);

impl FromStr for PlannerKind {
    type Err = UnknownPlanner;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "wastar" | "wa*" => Ok(PlannerKind::WAStar),
            "pase" => Ok(PlannerKind::Pase),
            "epase" => Ok(PlannerKind::Epase),
            "gepase" => Ok(PlannerKind::Gepase),
            _ => Err(UnknownPlanner(s.to_string())),
        }
    }
}

/// w-GePA*SE: cheap edges are expanded inline with their parent, expensive
/// edges are dispatched to workers individually.
pub fn plan_gepase<D: Domain>(domain: &D, start: StateId, config: &PlannerConfig) -> Result<SearchResult, PlanError> {
    PlannerKind::Gepase.plan(domain, start, config)
}

/// w-ePA*SE: every edge is dispatched to a worker individually.
pub fn plan_epase<D: Domain>(domain: &D, start: StateId, config: &PlannerConfig) -> Result<SearchResult, PlanError> {
    PlannerKind::Epase.plan(domain, start, config)
}

/// w-PA*SE: states are expanded in parallel, each worker evaluating all of
/// a state's edges in sequence.
pub fn plan_pase<D: Domain>(domain: &D, start: StateId, config: &PlannerConfig) -> Result<SearchResult, PlanError> {
    PlannerKind::Pase.plan(domain, start, config)
}

/// Single-threaded weighted A* without re-expansions.
pub fn plan_wastar<D: Domain>(domain: &D, start: StateId, config: &PlannerConfig) -> Result<SearchResult, PlanError> {
    PlannerKind::WAStar.plan(domain, start, config)
}
