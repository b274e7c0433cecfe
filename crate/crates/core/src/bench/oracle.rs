use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::Arc;

use crate::grid2d::{GridDomain, GridMap, GridParams, GridState, Move};
use crate::search::Cost;

/// Exact single-source shortest-path costs over the grid's 8-move lattice,
/// with the same collision checks and integer costs as the planners but no
/// heuristic and no simulated delay.
pub fn dijkstra_costs(map: &Arc<GridMap>, params: GridParams, start: GridState) -> BTreeMap<GridState, Cost> {
    let domain = GridDomain::new(Arc::clone(map), params, start);
    let mut dist = BTreeMap::new();
    if !domain.is_free(start) {
        return dist;
    }
    let mut heap = BinaryHeap::new();
    dist.insert(start, 0);
    heap.push(Reverse((0, start)));
    while let Some(Reverse((d, s))) = heap.pop() {
        if dist.get(&s).is_some_and(|&best| best < d) {
            continue;
        }
        for mv in Move::ALL {
            if let Some((t, c)) = domain.evaluate_move(s, mv) {
                let nd = d + c;
                if dist.get(&t).is_none_or(|&best| nd < best) {
                    dist.insert(t, nd);
                    heap.push(Reverse((nd, t)));
                }
            }
        }
    }
    dist
}

/// Optimal cost from `start` to `goal`, or `None` if unreachable.
pub fn dijkstra_oracle(map: &Arc<GridMap>, params: GridParams, start: GridState, goal: GridState) -> Option<Cost> {
    let domain = GridDomain::new(Arc::clone(map), params, goal);
    if !domain.is_free(start) {
        return None;
    }
    if start == goal {
        return Some(0);
    }
    let mut dist = BTreeMap::from([(start, 0)]);
    let mut heap = BinaryHeap::from([Reverse((0, start))]);
    while let Some(Reverse((d, s))) = heap.pop() {
        if s == goal {
            return Some(d);
        }
        if dist.get(&s).is_some_and(|&best| best < d) {
            continue;
        }
        for mv in Move::ALL {
            if let Some((t, c)) = domain.evaluate_move(s, mv) {
                let nd = d + c;
                if dist.get(&t).is_none_or(|&best| nd < best) {
                    dist.insert(t, nd);
                    heap.push(Reverse((nd, t)));
                }
            }
        }
    }
    None
}
