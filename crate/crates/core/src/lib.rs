//! Parallel bounded-suboptimal heuristic search.
//!
//! Four planners over a pluggable [`Domain`]: weighted A*, w-PA*SE (parallel
//! state expansions), w-ePA*SE (parallel edge evaluations) and w-GePA*SE,
//! which evaluates a state's cheap edges inline and dispatches only its
//! expensive edges as independent units of parallel work. With `epsilon >= w`
//! every returned path costs at most `epsilon` times the optimum, and no
//! state is ever expanded twice.
//!
//! [`grid2d`] provides a 2D grid-world domain with a simulated cheap/expensive
//! action split, and [`bench`] the experiment harness around it.

pub mod bench;
pub mod domain;
pub mod executor;
pub mod grid2d;
pub mod planner;
pub mod search;

pub use domain::{Domain, DomainError, Relabeled, Successor};
pub use planner::{
    plan_epase, plan_gepase, plan_pase, plan_wastar, PlanError, PlannerKind, SearchResult, SearchStats,
    SearchStatus,
};
pub use search::{ActionClass, ActionId, Cost, EdgeKey, Path, PlannerConfig, StateId};
