//! Edge independence checks.
//!
//! An edge `e` is independent of pending or in-flight work at state `s'` when
//! expanding from `s'` cannot lower `g(e.s)` by more than the relaxation
//! allows: `g(e.s) - g(s') <= epsilon * h(s', e.s)`.

use super::queue::{BeQueue, OpenQueue};
use super::types::{Cost, EdgeKey, Priority, StateId, StateTable};

/// `g(target) - g(other) <= epsilon * h(other, target)`.
#[inline]
pub fn g_gap_within(g_target: Cost, g_other: Cost, h_between: Cost, epsilon: f64) -> bool {
    if g_target <= g_other {
        return true;
    }
    ((g_target - g_other) as f64) <= epsilon * h_between as f64
}

/// Checks `edge` against every OPEN entry with strictly smaller priority.
///
/// `edge` must be in `open`. Traversal stops at the first entry whose
/// priority is not below the edge's.
pub fn independent_of_open<H>(
    edge: EdgeKey,
    open: &OpenQueue,
    records: &StateTable,
    pairwise_h: H,
    epsilon: f64,
) -> bool
where
    H: Fn(StateId, StateId) -> Cost,
{
    let f = open
        .priority(&edge)
        .expect("independence check on an edge that is not in OPEN");
    let g = records.g(edge.state);
    for (other, f_other) in open.iter() {
        if f_other >= f {
            break;
        }
        if other.state == edge.state {
            continue;
        }
        if !g_gap_within(g, records.g(other.state), pairwise_h(other.state, edge.state), epsilon) {
            return false;
        }
    }
    true
}

/// Checks a candidate with source `state` and priority `f` against the BE
/// states whose priority is strictly below `f`.
pub fn independent_of_be<H>(
    state: StateId,
    f: Priority,
    be: &BeQueue,
    records: &StateTable,
    pairwise_h: H,
    epsilon: f64,
) -> bool
where
    H: Fn(StateId, StateId) -> Cost,
{
    let g = records.g(state);
    for (other, f_other) in be.iter() {
        if f_other >= f {
            break;
        }
        if other == state {
            continue;
        }
        if !g_gap_within(g, records.g(other), pairwise_h(other, state), epsilon) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::types::ActionId;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(gs: &[Cost]) -> StateTable {
        let mut t = StateTable::new();
        for (i, g) in gs.iter().enumerate() {
            t.get_mut(StateId(i as u32)).g = *g;
        }
        t
    }

    #[test]
    fn front_edge_is_independent() {
        let mut open = OpenQueue::default();
        let e = EdgeKey::dummy(StateId(0));
        open.insert_or_update(e, Priority(5.0));
        open.insert_or_update(EdgeKey::dummy(StateId(1)), Priority(9.0));
        let t = table(&[100, 0]);
        assert!(independent_of_open(e, &open, &t, |_, _| 0, 1.0));
    }

    #[test]
    fn open_violation_detected() {
        // e' has g=3, edge has g=10, h(e'.s, edge.s)=4: 7 > 4.
        let mut open = OpenQueue::default();
        let other = EdgeKey::dummy(StateId(0));
        let edge = EdgeKey::dummy(StateId(1));
        open.insert_or_update(other, Priority(11.0));
        open.insert_or_update(edge, Priority(12.0));
        let t = table(&[3, 10]);
        assert!(!independent_of_open(edge, &open, &t, |_, _| 4, 1.0));
        assert!(independent_of_open(edge, &open, &t, |_, _| 4, 2.0));
    }

    #[test]
    fn empty_be_is_vacuous() {
        let t = table(&[10]);
        assert!(independent_of_be(StateId(0), Priority(12.0), &BeQueue::default(), &t, |_, _| 0, 1.0));
    }

    #[test]
    fn be_within_gap() {
        // s' g=8 f=9; edge g=10 f=12; h=3: 2 <= 3.
        let mut be = BeQueue::default();
        be.insert_or_update(StateId(0), Priority(9.0));
        let t = table(&[8, 10]);
        assert!(independent_of_be(StateId(1), Priority(12.0), &be, &t, |_, _| 3, 1.0));
        assert!(!independent_of_be(StateId(1), Priority(12.0), &be, &t, |_, _| 1, 1.0));
    }

    #[test]
    fn be_entries_at_or_above_f_are_skipped() {
        let mut be = BeQueue::default();
        be.insert_or_update(StateId(0), Priority(12.0));
        let t = table(&[0, 10]);
        assert!(independent_of_be(StateId(1), Priority(12.0), &be, &t, |_, _| 0, 1.0));
    }

    #[test]
    fn open_check_matches_exhaustive_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = 20;
            let gs: Vec<Cost> = (0..n).map(|_| rng.gen_range(0..50)).collect();
            let hs: Vec<Vec<Cost>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..20)).collect()).collect();
            let t = table(&gs);
            let mut open = OpenQueue::default();
            let mut entries = Vec::new();
            for i in 0..n {
                let e = if rng.gen_bool(0.5) {
                    EdgeKey::dummy(StateId(i as u32))
                } else {
                    EdgeKey::new(StateId(i as u32), ActionId::expensive(0))
                };
                let f = Priority(rng.gen_range(0..30) as f64);
                open.insert_or_update(e, f);
                entries.push((e, f));
            }
            let h = |a: StateId, b: StateId| hs[a.index()][b.index()];
            let eps = rng.gen_range(1.0..3.0);
            for &(e, f) in &entries {
                let brute = entries
                    .iter()
                    .filter(|(o, fo)| *fo < f && o.state != e.state)
                    .all(|(o, _)| {
                        let (ge, go) = (gs[e.state.index()] as f64, gs[o.state.index()] as f64);
                        ge - go <= eps * h(o.state, e.state) as f64
                    });
                assert_eq!(independent_of_open(e, &open, &t, h, eps), brute);
            }
        }
    }
}
