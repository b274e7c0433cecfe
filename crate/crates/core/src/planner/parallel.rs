//! Coordinator loop and edge expansion shared by PA*SE, ePA*SE and GePA*SE.

use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;
use std::time::Instant;

use crate::domain::{Domain, DomainError, Successor};
use crate::executor::{holds_search_lock, SearchLock, WorkerPool};
use crate::search::{
    backtrack, independent_of_be, independent_of_open, promote_to_closed, ActionClass, ActionId, BeQueue, EdgeKey,
    Membership, OpenQueue, Path, PlannerConfig, Priority, StateId, StateTable,
};

use super::{BeCheck, PlanError, SearchObserver, SearchResult, SearchStats, SearchStatus};

/// How the actions of a popped dummy edge are split between inline
/// evaluation and dispatch through OPEN.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every action treated as cheap.
    Pase,
    /// Every action treated as expensive.
    Epase,
    /// The domain's own labels.
    Gepase,
}

impl Strategy {
    pub fn class_of(self, action: ActionId) -> ActionClass {
        match self {
            Strategy::Pase => ActionClass::Cheap,
            Strategy::Epase => ActionClass::Expensive,
            Strategy::Gepase => action.class(),
        }
    }
}

struct Shared {
    records: StateTable,
    open: OpenQueue,
    be: BeQueue,
    error: Option<DomainError>,
    expansions: u64,
}

struct Search<'a, D, O> {
    domain: &'a D,
    observer: &'a O,
    lock: SearchLock<Shared>,
    w: f64,
    epsilon: f64,
    num_actions: usize,
    cheap: Vec<ActionId>,
    expensive: Vec<ActionId>,
    evaluations: AtomicU64,
}

enum Outcome {
    Solved(Path),
    Exhausted,
    Timeout,
    Fault(DomainError),
}

pub(super) fn plan<D: Domain, O: SearchObserver>(
    domain: &D,
    start: StateId,
    config: &PlannerConfig,
    strategy: Strategy,
    observer: &O,
) -> Result<SearchResult, PlanError> {
    let t0 = Instant::now();
    let deadline = t0 + config.timeout();
    let (cheap, expensive): (Vec<ActionId>, Vec<ActionId>) = domain
        .actions()
        .iter()
        .copied()
        .partition(|&a| strategy.class_of(a) == ActionClass::Cheap);

    let mut shared = Shared {
        records: StateTable::new(),
        open: OpenQueue::new(config.tie_break_seed()),
        be: BeQueue::new(config.tie_break_seed()),
        error: None,
        expansions: 0,
    };
    let h0 = domain.heuristic(start);
    let rec = shared.records.get_mut(start);
    rec.g = 0;
    rec.h = Some(h0);
    rec.membership = Membership::Open;
    shared
        .open
        .insert_or_update(EdgeKey::dummy(start), Priority::of(0, h0, config.w()));

    let search = Search {
        domain,
        observer,
        lock: SearchLock::new(shared),
        w: config.w(),
        epsilon: config.epsilon(),
        num_actions: domain.actions().len(),
        cheap,
        expensive,
        evaluations: AtomicU64::new(0),
    };

    let outcome = thread::scope(|scope| {
        let mut pool = WorkerPool::new(scope, config.num_threads(), |edge: EdgeKey| search.expand(edge));
        let outcome = search.coordinate(&mut pool, deadline);
        search.lock.raise_terminate();
        pool.shutdown();
        outcome
    });

    let stats = SearchStats {
        wall_time: t0.elapsed(),
        edge_evaluations: search.evaluations.load(Ordering::SeqCst),
        state_expansions: search.lock.into_inner().expansions,
    };
    let (status, path) = match outcome {
        Outcome::Solved(p) => (SearchStatus::Solved, Some(p)),
        Outcome::Exhausted => (SearchStatus::Exhausted, None),
        Outcome::Timeout => (SearchStatus::Timeout, None),
        Outcome::Fault(e) => return Err(PlanError::Domain(e)),
    };
    Ok(SearchResult { status, path, stats })
}

impl<D: Domain, O: SearchObserver> Search<'_, D, O> {
    fn coordinate(&self, pool: &mut WorkerPool<'_, '_, EdgeKey>, deadline: Instant) -> Outcome {
        loop {
            // Selecting only once a worker is free keeps the selection as
            // fresh as possible; with one worker it also makes runs deterministic.
            match pool.wait_available(Some(deadline)) {
                Ok(true) => {}
                Ok(false) | Err(_) => return self.timeout_or_fault(),
            }
            let mut guard = self.lock.lock();
            let (edge, f) = loop {
                if let Some(e) = guard.error.take() {
                    return Outcome::Fault(e);
                }
                if Instant::now() >= deadline {
                    return Outcome::Timeout;
                }
                if guard.open.is_empty() && guard.be.is_empty() {
                    return Outcome::Exhausted;
                }
                guard.clear_pending();
                if let Some(found) = self.select(&guard) {
                    break found;
                }
                guard = self.lock.wait_for_change(guard, Some(deadline));
            };
            guard.open.remove(&edge);

            if self.domain.is_goal(edge.state) {
                return Outcome::Solved(backtrack(edge.state, &guard.records));
            }

            if edge.is_dummy() {
                let s = edge.state;
                let shared = &mut *guard;
                shared.be.insert_or_update(s, f);
                shared.records.get_mut(s).membership = Membership::Be;
                shared.expansions += 1;
                for &a in &self.expensive {
                    shared.open.insert_or_update(EdgeKey::new(s, a), f);
                }
                if self.num_actions == 0 {
                    promote_to_closed(s, 0, &mut shared.be, &mut shared.records);
                    self.observer.state_closed(s);
                }
                if self.cheap.is_empty() {
                    continue;
                }
            }
            drop(guard);
            if pool.assign(edge).is_err() {
                return self.timeout_or_fault();
            }
        }
    }

    fn timeout_or_fault(&self) -> Outcome {
        match self.lock.lock().error.take() {
            Some(e) => Outcome::Fault(e),
            None => Outcome::Timeout,
        }
    }

    /// The lowest-priority OPEN edge that is independent of everything ahead
    /// of it in OPEN and of the lower-priority states in BE.
    fn select(&self, shared: &Shared) -> Option<(EdgeKey, Priority)> {
        let h = |a: StateId, b: StateId| self.domain.pairwise_heuristic(a, b);
        for (edge, f) in shared.open.iter() {
            let passed = independent_of_be(edge.state, f, &shared.be, &shared.records, h, self.epsilon);
            self.observer.be_check(&BeCheck {
                state: edge.state,
                f,
                passed,
                be: &shared.be,
                records: &shared.records,
                epsilon: self.epsilon,
            });
            if passed && independent_of_open(edge, &shared.open, &shared.records, h, self.epsilon) {
                return Some((edge, f));
            }
        }
        None
    }

    /// Worker side: a dummy edge evaluates its state's cheap actions inline,
    /// a real edge is evaluated on its own.
    fn expand(&self, edge: EdgeKey) {
        if edge.is_dummy() {
            for &a in &self.cheap {
                if self.lock.is_terminated() {
                    return;
                }
                self.expand_edge(edge.state, a);
            }
        } else {
            self.expand_edge(edge.state, edge.action);
        }
    }

    fn expand_edge(&self, s: StateId, action: ActionId) {
        debug_assert!(!holds_search_lock(), "edge evaluated under the search lock");
        self.evaluations.fetch_add(1, Ordering::SeqCst);
        let result = self.domain.generate_successor(s, action);
        let succ_h = match &result {
            Ok(Some(succ)) => Some(self.domain.heuristic(succ.state)),
            _ => None,
        };

        let mut guard = self.lock.lock();
        let succ = match result {
            Ok(succ) => succ,
            Err(e) => {
                guard.error.get_or_insert(e);
                guard.raise_terminate();
                return;
            }
        };
        let shared = &mut *guard;
        let mut changed = false;
        if let (Some(Successor { state: t, cost }), Some(h)) = (succ, succ_h) {
            let new_g = shared.records.g(s).saturating_add(cost);
            let rec = shared.records.get_mut(t);
            if matches!(rec.membership, Membership::None | Membership::Open) && rec.g > new_g {
                let h = *rec.h.get_or_insert(h);
                rec.g = new_g;
                rec.parent = Some(EdgeKey::new(s, action));
                rec.membership = Membership::Open;
                shared
                    .open
                    .insert_or_update(EdgeKey::dummy(t), Priority::of(new_g, h, self.w));
                changed = true;
            }
        }
        let rec = shared.records.get_mut(s);
        rec.successors_generated += 1;
        if rec.successors_generated as usize == self.num_actions {
            promote_to_closed(s, self.num_actions, &mut shared.be, &mut shared.records);
            self.observer.state_closed(s);
            changed = true;
        }
        if changed {
            guard.notify_change();
        }
    }
}
