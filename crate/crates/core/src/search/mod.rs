//! Domain-agnostic search state: records, OPEN/BE queues and independence checks.
//!
//! None of these containers synchronise internally. The planners only touch
//! them while holding the global search lock.

mod independence;
mod path;
mod queue;
mod types;

pub use independence::{g_gap_within, independent_of_be, independent_of_open};
pub use path::{backtrack, Path};
pub use queue::{BeQueue, IndexedQueue, OpenQueue};
pub use types::{
    ActionClass, ActionId, ConfigError, Cost, EdgeKey, Membership, PlannerConfig, Priority,
    StateId, StateRecord, StateTable, INFINITE_COST,
};

/// Moves a fully expanded state from BE to CLOSED.
///
/// Panics unless `state` is in BE and all `num_actions` successors have been generated.
pub fn promote_to_closed(state: StateId, num_actions: usize, be: &mut BeQueue, records: &mut StateTable) {
    let rec = records.get_mut(state);
    assert_eq!(
        rec.successors_generated as usize, num_actions,
        "closing {state} before all successors were generated"
    );
    assert!(be.remove(&state).is_some(), "closing {state} which is not in BE");
    rec.membership = Membership::Closed;
}
