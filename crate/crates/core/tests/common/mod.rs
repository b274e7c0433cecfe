#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use gepase::executor::holds_search_lock;
use gepase::grid2d::{load_movingai_file, GridDomain, GridMap, GridParams, GridState, Move};
use gepase::planner::{BeCheck, SearchObserver};
use gepase::{ActionId, Cost, Domain, DomainError, StateId, Successor};

pub fn maps_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../maps")
}

/// The five base 64x64 maps shipped with the repository, scaled.
pub fn base_maps(scale: usize) -> Vec<Arc<GridMap>> {
    (0..5)
        .map(|i| {
            let m = load_movingai_file(maps_dir().join(format!("rooms{i}.map"))).expect("base map");
            Arc::new(m.scale(scale))
        })
        .collect()
}

/// Forwards to a domain while logging every evaluated edge in call order and
/// asserting the search lock is never held by the evaluating thread.
pub struct Recording<D> {
    pub inner: D,
    log: Mutex<Vec<(StateId, u32)>>,
    lock_violations: AtomicU64,
}

impl<D: Domain> Recording<D> {
    pub fn new(inner: D) -> Self {
        Recording {
            inner,
            log: Mutex::new(Vec::new()),
            lock_violations: AtomicU64::new(0),
        }
    }

    pub fn take_log(&self) -> Vec<(StateId, u32)> {
        std::mem::take(&mut *self.log.lock().unwrap())
    }

    pub fn calls(&self) -> usize {
        self.log.lock().unwrap().len()
    }

    pub fn lock_violations(&self) -> u64 {
        self.lock_violations.load(Ordering::Relaxed)
    }
}

impl<D: Domain> Domain for Recording<D> {
    fn actions(&self) -> &[ActionId] {
        self.inner.actions()
    }

    fn generate_successor(&self, state: StateId, action: ActionId) -> Result<Option<Successor>, DomainError> {
        if holds_search_lock() {
            self.lock_violations.fetch_add(1, Ordering::Relaxed);
        }
        assert!(!holds_search_lock(), "search lock held during edge evaluation");
        self.log.lock().unwrap().push((state, action.index()));
        self.inner.generate_successor(state, action)
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

/// Counts closures per state, and re-checks every passing pruned BE test
/// against the whole BE set.
pub struct Audit<'d, D> {
    domain: &'d D,
    closed: Mutex<HashMap<StateId, u32>>,
    pub be_checks: AtomicU64,
    pub be_passed: AtomicU64,
    pub be_violations: AtomicU64,
}

impl<'d, D: Domain> Audit<'d, D> {
    pub fn new(domain: &'d D) -> Self {
        Audit {
            domain,
            closed: Mutex::new(HashMap::new()),
            be_checks: AtomicU64::new(0),
            be_passed: AtomicU64::new(0),
            be_violations: AtomicU64::new(0),
        }
    }

    pub fn reclosures(&self) -> usize {
        self.closed.lock().unwrap().values().filter(|&&n| n > 1).count()
    }

    pub fn closures(&self) -> usize {
        self.closed.lock().unwrap().len()
    }

    pub fn passed(&self) -> u64 {
        self.be_passed.load(Ordering::Relaxed)
    }

    pub fn violations(&self) -> u64 {
        self.be_violations.load(Ordering::Relaxed)
    }
}

impl<D: Domain> SearchObserver for Audit<'_, D> {
    fn be_check(&self, check: &BeCheck<'_>) {
        self.be_checks.fetch_add(1, Ordering::Relaxed);
        if !check.passed {
            return;
        }
        self.be_passed.fetch_add(1, Ordering::Relaxed);
        let g = check.records.get(check.state).g;
        let sound = check.be.iter().all(|(other, _)| {
            let g_other = check.records.get(other).g;
            let h = self.domain.pairwise_heuristic(other, check.state);
            g <= g_other || (g - g_other) as f64 <= check.epsilon * h as f64
        });
        if !sound {
            self.be_violations.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn state_closed(&self, state: StateId) {
        *self.closed.lock().unwrap().entry(state).or_insert(0) += 1;
    }
}

pub fn free_anchors(d: &GridDomain) -> Vec<GridState> {
    let m = d.map();
    let mut out = Vec::new();
    for y in 0..m.height() as i64 {
        for x in 0..m.width() as i64 {
            let s = GridState::new(x, y);
            if d.is_free(s) {
                out.push(s);
            }
        }
    }
    out
}

/// Independent sweep: every cell covered by the footprint at each unit step
/// of the move, endpoint included, must be inside the map and free.
pub fn brute_force_feasible(map: &GridMap, from: GridState, mv: Move, params: GridParams) -> bool {
    let (dx, dy) = mv.delta();
    let side = params.footprint as i64;
    (1..=params.step as i64).all(|k| {
        let (ax, ay) = (from.x + k * dx, from.y + k * dy);
        (ax..ax + side).all(|x| {
            (ay..ay + side).all(|y| {
                x >= 0 && y >= 0 && (x as usize) < map.width() && (y as usize) < map.height() && !map.is_blocked(x, y)
            })
        })
    })
}
