use std::time::Instant;

use crate::domain::{Domain, Successor};
use crate::search::{backtrack, EdgeKey, Membership, OpenQueue, PlannerConfig, Priority, StateId, StateTable};

use super::{PlanError, SearchObserver, SearchResult, SearchStats, SearchStatus};

pub(super) fn plan<D: Domain, O: SearchObserver>(
    domain: &D,
    start: StateId,
    config: &PlannerConfig,
    observer: &O,
) -> Result<SearchResult, PlanError> {
    let t0 = Instant::now();
    let deadline = t0 + config.timeout();
    let w = config.w();
    let mut records = StateTable::new();
    let mut open = OpenQueue::new(config.tie_break_seed());
    let mut stats = SearchStats::default();

    let h0 = domain.heuristic(start);
    let rec = records.get_mut(start);
    rec.g = 0;
    rec.h = Some(h0);
    rec.membership = Membership::Open;
    open.insert_or_update(EdgeKey::dummy(start), Priority::of(0, h0, w));

    let finish = |status, path, mut stats: SearchStats| {
        stats.wall_time = t0.elapsed();
        Ok(SearchResult { status, path, stats })
    };

    while let Some((edge, _)) = open.pop_front() {
        if Instant::now() >= deadline {
            return finish(SearchStatus::Timeout, None, stats);
        }
        let s = edge.state;
        if domain.is_goal(s) {
            return finish(SearchStatus::Solved, Some(backtrack(s, &records)), stats);
        }
        records.get_mut(s).membership = Membership::Closed;
        observer.state_closed(s);
        stats.state_expansions += 1;
        let g_s = records.g(s);

        for &action in domain.actions() {
            stats.edge_evaluations += 1;
            let Some(Successor { state: t, cost }) = domain.generate_successor(s, action)? else {
                continue;
            };
            let new_g = g_s.saturating_add(cost);
            let rec = records.get_mut(t);
            if rec.membership == Membership::Closed || rec.g <= new_g {
                continue;
            }
            let h = *rec.h.get_or_insert_with(|| domain.heuristic(t));
            rec.g = new_g;
            rec.parent = Some(EdgeKey::new(s, action));
            rec.membership = Membership::Open;
            open.insert_or_update(EdgeKey::dummy(t), Priority::of(new_g, h, w));
        }
    }
    finish(SearchStatus::Exhausted, None, stats)
}
