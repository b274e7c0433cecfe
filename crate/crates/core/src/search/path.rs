use std::collections::HashSet;

use super::types::{Cost, EdgeKey, StateId, StateTable, INFINITE_COST};

/// A solution: `states[0]` is the start, `edges[i]` leads from `states[i]` to `states[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub states: Vec<StateId>,
    pub edges: Vec<EdgeKey>,
    pub cost: Cost,
}

impl Path {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn goal(&self) -> StateId {
        *self.states.last().expect("path has at least one state")
    }
}

/// Follows parent links from `goal` back to the root.
///
/// Panics if `goal` is undiscovered or the parent links form a cycle.
pub fn backtrack(goal: StateId, records: &StateTable) -> Path {
    let cost = records.g(goal);
    assert!(cost != INFINITE_COST, "backtrack from undiscovered state {goal}");
    let mut states = vec![goal];
    let mut edges = Vec::new();
    let mut seen = HashSet::from([goal]);
    let mut cur = goal;
    while let Some(parent) = records.get(cur).parent {
        assert!(seen.insert(parent.state), "cycle in parent links at {}", parent.state);
        edges.push(parent);
        states.push(parent.state);
        cur = parent.state;
    }
    states.reverse();
    edges.reverse();
    Path { states, edges, cost }
}
