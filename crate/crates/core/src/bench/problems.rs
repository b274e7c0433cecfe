use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::grid2d::{GridDomain, GridMap, GridParams, GridState};
use crate::search::Cost;

use super::oracle::dijkstra_costs;
use super::BenchError;

const START_ATTEMPTS: usize = 200;
const SAMPLE_ATTEMPTS: usize = 10_000;

/// A start/goal pair on one map, with its optimal cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub id: usize,
    pub map_index: usize,
    pub map: String,
    pub start: GridState,
    pub goal: GridState,
    pub seed: u64,
    pub oracle_cost: Cost,
}

fn map_seed(seed: u64, map_index: usize) -> u64 {
    seed ^ (map_index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Samples `per_map` solvable instances per map, deterministically in `seed`.
///
/// Starts are uniform over footprint-feasible anchors; goals are uniform over
/// the states reachable from the start, found by an exact Dijkstra sweep that
/// also supplies the optimal cost.
pub fn generate_problems(
    maps: &[Arc<GridMap>],
    params: GridParams,
    per_map: usize,
    seed: u64,
) -> Result<Vec<ProblemInstance>, BenchError> {
    let mut out = Vec::new();
    for (map_index, map) in maps.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(map_seed(seed, map_index));
        let probe = GridDomain::new(Arc::clone(map), params, GridState::new(0, 0));
        for _ in 0..per_map {
            let mut found = None;
            for _ in 0..START_ATTEMPTS {
                let Some(start) = probe.sample_free_state(&mut rng, SAMPLE_ATTEMPTS) else {
                    break;
                };
                let costs = dijkstra_costs(map, params, start);
                let goals: Vec<(&GridState, &Cost)> = costs.iter().filter(|(s, _)| **s != start).collect();
                if goals.is_empty() {
                    continue;
                }
                let (goal, cost) = goals[rng.gen_range(0..goals.len())];
                found = Some((start, *goal, *cost));
                break;
            }
            let (start, goal, oracle_cost) = found.ok_or_else(|| BenchError::NoFeasiblePair {
                map: map.name().to_string(),
            })?;
            out.push(ProblemInstance {
                id: out.len(),
                map_index,
                map: map.name().to_string(),
                start,
                goal,
                seed: rng.gen(),
                oracle_cost,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::oracle::dijkstra_oracle;
    use crate::grid2d::synth::random_obstacle_map;

    fn params() -> GridParams {
        GridParams { step: 4, footprint: 3 }
    }

    #[test]
    fn blocked_map_is_an_error() {
        let mut m = GridMap::new(16, 16, "solid");
        for y in 0..16 {
            for x in 0..16 {
                m.set_blocked(x, y, true);
            }
        }
        match generate_problems(&[Arc::new(m)], params(), 1, 0) {
            Err(BenchError::NoFeasiblePair { map }) => assert_eq!(map, "solid"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let maps = vec![Arc::new(random_obstacle_map(48, 48, 0.15, 6, 2, "m"))];
        let a = generate_problems(&maps, params(), 5, 42).unwrap();
        let b = generate_problems(&maps, params(), 5, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_problems(&maps, params(), 5, 43).unwrap());
    }

    #[test]
    fn instances_are_solvable_and_admissible() {
        let maps = vec![
            Arc::new(random_obstacle_map(48, 48, 0.15, 6, 5, "a")),
            Arc::new(random_obstacle_map(40, 56, 0.1, 8, 6, "b")),
        ];
        for p in generate_problems(&maps, params(), 6, 1).unwrap() {
            let map = &maps[p.map_index];
            assert_ne!(p.start, p.goal);
            let d = GridDomain::new(Arc::clone(map), params(), p.goal);
            assert!(d.is_free(p.start) && d.is_free(p.goal));
            assert_eq!(dijkstra_oracle(map, params(), p.start, p.goal), Some(p.oracle_cost));
            assert!(p.oracle_cost >= d.costs().distance(p.start, p.goal));
        }
    }
}
