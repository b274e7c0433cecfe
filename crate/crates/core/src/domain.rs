use std::error::Error;

use thiserror::Error;

use crate::search::{ActionClass, ActionId, Cost, StateId};

/// Failure raised by a domain while evaluating an edge.
#[derive(Debug, Error)]
#[error("domain fault: {0}")]
pub struct DomainError(#[source] pub Box<dyn Error + Send + Sync>);

impl DomainError {
    pub fn msg(msg: impl Into<String>) -> Self {
        DomainError(msg.into().into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Successor {
    pub state: StateId,
    pub cost: Cost,
}

/// A graph the planners search over.
///
/// Implementations are shared between the coordinator and worker threads, and
/// `generate_successor` is called concurrently without any planner lock held.
///
/// Contract:
/// - `heuristic` is consistent (`h(s) <= c(s, a) + h(s')`) and zero on goals;
/// - `pairwise_heuristic` satisfies the triangle inequality and never
///   overestimates the optimal cost between two states;
/// - `heuristic(s)` should equal `pairwise_heuristic(s, goal)` when the goal
///   region is a single state.
pub trait Domain: Sync {
    /// The full action table, with `actions()[i].index() == i`. Never
    /// contains the dummy action.
    fn actions(&self) -> &[ActionId];

    /// Evaluates one edge. `Ok(None)` means the action is infeasible from `state`.
    fn generate_successor(&self, state: StateId, action: ActionId) -> Result<Option<Successor>, DomainError>;

    fn heuristic(&self, state: StateId) -> Cost;

    fn pairwise_heuristic(&self, from: StateId, to: StateId) -> Cost;

    fn is_goal(&self, state: StateId) -> bool;
}

impl<D: Domain + ?Sized> Domain for &D {
    fn actions(&self) -> &[ActionId] {
        (**self).actions()
    }
    fn generate_successor(&self, state: StateId, action: ActionId) -> Result<Option<Successor>, DomainError> {
        (**self).generate_successor(state, action)
    }
    fn heuristic(&self, state: StateId) -> Cost {
        (**self).heuristic(state)
    }
    fn pairwise_heuristic(&self, from: StateId, to: StateId) -> Cost {
        (**self).pairwise_heuristic(from, to)
    }
    fn is_goal(&self, state: StateId) -> bool {
        (**self).is_goal(state)
    }
}

/// Wraps a domain and relabels every action with one class.
///
/// Relabelling everything `Cheap` turns GePA*SE into PA*SE; relabelling
/// everything `Expensive` turns it into ePA*SE.
pub struct Relabeled<D> {
    inner: D,
    actions: Vec<ActionId>,
}

impl<D: Domain> Relabeled<D> {
    pub fn new(inner: D, class: ActionClass) -> Self {
        let actions = inner.actions().iter().map(|a| a.with_class(class)).collect();
        Relabeled { inner, actions }
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }
}

impl<D: Domain> Domain for Relabeled<D> {
    fn actions(&self) -> &[ActionId] {
        &self.actions
    }

    fn generate_successor(&self, state: StateId, action: ActionId) -> Result<Option<Successor>, DomainError> {
        // The inner domain only cares about the table index.
        let original = self.inner.actions()[action.index() as usize];
        self.inner.generate_successor(state, original)
    }

    fn heuristic(&self, state: StateId) -> Cost {
        self.inner.heuristic(state)
    }

    fn pairwise_heuristic(&self, from: StateId, to: StateId) -> Cost {
        self.inner.pairwise_heuristic(from, to)
    }

    fn is_goal(&self, state: StateId) -> bool {
        self.inner.is_goal(state)
    }
}
