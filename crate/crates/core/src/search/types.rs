use std::cmp::Ordering;
use std::fmt;
use std::time::Duration;

use thiserror::Error;

/// Exact edge/path cost. Domains scale their costs to integers.
pub type Cost = u64;

/// Sentinel for an undiscovered state's g-value. Strictly greater than any finite cost.
pub const INFINITE_COST: Cost = Cost::MAX;

/// Dense handle for a domain state. Two equal handles denote the same state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionClass {
    Cheap,
    Expensive,
    /// Stands in for every not-yet-enumerated outgoing edge of a state.
    Dummy,
}

/// An action: an index into the domain's action table plus its cost class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ActionId {
    index: u32,
    class: ActionClass,
}

impl ActionId {
    pub const DUMMY: ActionId = ActionId {
        index: u32::MAX,
        class: ActionClass::Dummy,
    };

    pub fn cheap(index: u32) -> Self {
        assert!(index != u32::MAX, "index reserved for the dummy action");
        ActionId {
            index,
            class: ActionClass::Cheap,
        }
    }

    pub fn expensive(index: u32) -> Self {
        assert!(index != u32::MAX, "index reserved for the dummy action");
        ActionId {
            index,
            class: ActionClass::Expensive,
        }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn class(self) -> ActionClass {
        self.class
    }

    pub fn is_dummy(self) -> bool {
        self.class == ActionClass::Dummy
    }

    /// Same table index, different class label.
    pub fn with_class(self, class: ActionClass) -> Self {
        assert!(!self.is_dummy() && class != ActionClass::Dummy);
        ActionId {
            index: self.index,
            class,
        }
    }
}

/// A `(state, action)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeKey {
    pub state: StateId,
    pub action: ActionId,
}

impl EdgeKey {
    pub fn new(state: StateId, action: ActionId) -> Self {
        EdgeKey { state, action }
    }

    pub fn dummy(state: StateId) -> Self {
        EdgeKey {
            state,
            action: ActionId::DUMMY,
        }
    }

    pub fn is_dummy(&self) -> bool {
        self.action.is_dummy()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Membership {
    #[default]
    None,
    Open,
    Be,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateRecord {
    pub g: Cost,
    /// Cached at discovery; `None` until then.
    pub h: Option<Cost>,
    pub parent: Option<EdgeKey>,
    pub successors_generated: u32,
    pub membership: Membership,
}

impl Default for StateRecord {
    fn default() -> Self {
        StateRecord {
            g: INFINITE_COST,
            h: None,
            parent: None,
            successors_generated: 0,
            membership: Membership::None,
        }
    }
}

/// Per-state bookkeeping indexed by [`StateId`], grown on demand.
#[derive(Debug, Clone, Default)]
pub struct StateTable {
    records: Vec<StateRecord>,
}

const UNSEEN: StateRecord = StateRecord {
    g: INFINITE_COST,
    h: None,
    parent: None,
    successors_generated: 0,
    membership: Membership::None,
};

impl StateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, id: StateId) -> &StateRecord {
        self.records.get(id.index()).unwrap_or(&UNSEEN)
    }

    pub fn get_mut(&mut self, id: StateId) -> &mut StateRecord {
        let i = id.index();
        if i >= self.records.len() {
            self.records.resize(i + 1, StateRecord::default());
        }
        &mut self.records[i]
    }

    pub fn g(&self, id: StateId) -> Cost {
        self.get(id).g
    }

    /// Iterates over every record that has been touched, with its id.
    pub fn iter(&self) -> impl Iterator<Item = (StateId, &StateRecord)> {
        self.records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.g != INFINITE_COST || r.membership != Membership::None)
            .map(|(i, r)| (StateId(i as u32), r))
    }
}

/// Queue priority `f = g + w·h`. Totally ordered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priority(pub f64);

impl Priority {
    pub fn of(g: Cost, h: Cost, w: f64) -> Self {
        Priority(g as f64 + w * h as f64)
    }
}

impl Eq for Priority {}

impl PartialOrd for Priority {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Priority {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("heuristic inflation w must be >= 1 (got {0})")]
    Inflation(f64),
    #[error("independence relaxation epsilon must be >= w (got epsilon={epsilon}, w={w})")]
    Relaxation { w: f64, epsilon: f64 },
    #[error("thread budget must be >= 1")]
    Threads,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerConfig {
    w: f64,
    epsilon: f64,
    num_threads: usize,
    timeout: Duration,
    tie_break_seed: u64,
}

impl PlannerConfig {
    /// `epsilon >= w >= 1` is required for the `epsilon · c*` bound.
    pub fn new(w: f64, epsilon: f64, num_threads: usize) -> Result<Self, ConfigError> {
        if !w.is_finite() || w < 1.0 {
            return Err(ConfigError::Inflation(w));
        }
        if !epsilon.is_finite() || epsilon < w {
            return Err(ConfigError::Relaxation { w, epsilon });
        }
        if num_threads == 0 {
            return Err(ConfigError::Threads);
        }
        Ok(PlannerConfig {
            w,
            epsilon,
            num_threads,
            timeout: Duration::from_secs(60),
            tie_break_seed: 0,
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    /// Zero keeps equal-priority entries in insertion (FIFO) order; any other
    /// value orders them by a seeded permutation of their insertion number.
    pub fn with_tie_break_seed(mut self, seed: u64) -> Self {
        self.tie_break_seed = seed;
        self
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn num_threads(&self) -> usize {
        self.num_threads
    }

    pub fn timeout(&self) -> Duration {
        self.timeout
    }

    pub fn tie_break_seed(&self) -> u64 {
        self.tie_break_seed
    }
}
