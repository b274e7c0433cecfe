use std::hint::black_box;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Domain, DomainError, Successor};
use crate::search::{ActionClass, ActionId, Cost, StateId};

use super::map::GridMap;

/// Grid costs are Euclidean lengths in cells, multiplied by this and rounded.
pub const COST_SCALE: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridState {
    pub x: i64,
    pub y: i64,
}

impl GridState {
    pub fn new(x: i64, y: i64) -> Self {
        GridState { x, y }
    }
}

/// The eight compass moves. `North` is `+y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    East,
    North,
    West,
    South,
    NorthEast,
    NorthWest,
    SouthWest,
    SouthEast,
}

impl Move {
    /// Action-table order: the four cardinal moves, then the four diagonals.
    pub const ALL: [Move; 8] = [
        Move::East,
        Move::North,
        Move::West,
        Move::South,
        Move::NorthEast,
        Move::NorthWest,
        Move::SouthWest,
        Move::SouthEast,
    ];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Move::East => (1, 0),
            Move::North => (0, 1),
            Move::West => (-1, 0),
            Move::South => (0, -1),
            Move::NorthEast => (1, 1),
            Move::NorthWest => (-1, 1),
            Move::SouthWest => (-1, -1),
            Move::SouthEast => (1, -1),
        }
    }

    pub fn is_diagonal(self) -> bool {
        let (dx, dy) = self.delta();
        dx != 0 && dy != 0
    }

    /// Diagonal moves carry the simulated expensive feasibility check.
    pub fn class(self) -> ActionClass {
        if self.is_diagonal() {
            ActionClass::Expensive
        } else {
            ActionClass::Cheap
        }
    }

    pub fn from_index(i: u32) -> Move {
        Move::ALL[i as usize]
    }
}

fn ceil_sqrt(n: u128) -> u128 {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// Integer move costs for a given step length, and the Euclidean metric
/// scaled so it never exceeds them.
///
/// The metric is `ceil(k · d)` with `k = min(1000, diagonal / (step·√2))`
/// and `d` the Euclidean distance in cells, computed exactly. A ceiling of a
/// metric stays a metric, and with `k·d` bounded by each move's cost it is
/// consistent with the rounded costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    step: u32,
    cardinal: Cost,
    diagonal: Cost,
    // k² = num / den
    num: u128,
    den: u128,
}

impl CostModel {
    pub fn new(step: u32) -> Self {
        assert!(step >= 1, "step must be >= 1");
        let s = step as u64;
        let cardinal = COST_SCALE * s;
        let diagonal = (COST_SCALE as f64 * s as f64 * std::f64::consts::SQRT_2).round() as Cost;
        let scale2 = (COST_SCALE as u128).pow(2);
        let (dnum, dden) = ((diagonal as u128).pow(2), 2 * (s as u128).pow(2));
        // compare diag²/(2s²) with 1000²
        let (num, den) = if dnum < scale2 * dden { (dnum, dden) } else { (scale2, 1) };
        CostModel {
            step,
            cardinal,
            diagonal,
            num,
            den,
        }
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn move_cost(&self, mv: Move) -> Cost {
        if mv.is_diagonal() {
            self.diagonal
        } else {
            self.cardinal
        }
    }

    pub fn distance(&self, a: GridState, b: GridState) -> Cost {
        let dx = (a.x - b.x).unsigned_abs() as u128;
        let dy = (a.y - b.y).unsigned_abs() as u128;
        let q = dx * dx + dy * dy;
        ceil_sqrt((q * self.num).div_ceil(self.den)) as Cost
    }
}

/// Runs `iterations` rounds of dependent integer arithmetic.
pub fn spin(iterations: u64) -> u64 {
    let mut x: u64 = 0x2545_F491_4F6C_DD1D;
    for i in 0..iterations {
        x = black_box(x.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(i | 1));
    }
    x
}

/// Spin iterations per second on this machine, measured once per process.
pub fn spins_per_second() -> f64 {
    static RATE: OnceLock<f64> = OnceLock::new();
    *RATE.get_or_init(|| {
        spin(200_000);
        let mut best = f64::MAX;
        for _ in 0..5 {
            let n = 2_000_000;
            let t = Instant::now();
            black_box(spin(n));
            best = best.min(t.elapsed().as_secs_f64() / n as f64);
        }
        1.0 / best
    })
}

/// Extra busy work added to every expensive-action evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExpensiveDelay {
    spins: u64,
}

impl ExpensiveDelay {
    pub fn none() -> Self {
        ExpensiveDelay { spins: 0 }
    }

    pub fn from_spins(spins: u64) -> Self {
        ExpensiveDelay { spins }
    }

    pub fn from_seconds(seconds: f64) -> Self {
        ExpensiveDelay {
            spins: (seconds.max(0.0) * spins_per_second()) as u64,
        }
    }

    pub fn spins(&self) -> u64 {
        self.spins
    }

    pub fn burn(&self) {
        if self.spins > 0 {
            black_box(spin(self.spins));
        }
    }

    /// Sizes the delay so that expensive evaluations take `ratio` times as
    /// long as cheap ones on average, measured over random feasible states
    /// of `domain`'s map.
    pub fn calibrate(domain: &GridDomain, ratio: f64, samples: usize, seed: u64) -> Self {
        if ratio <= 1.0 {
            return ExpensiveDelay::none();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let states: Vec<GridState> = (0..samples)
            .filter_map(|_| domain.sample_free_state(&mut rng, 10_000))
            .collect();
        if states.is_empty() {
            return ExpensiveDelay::none();
        }
        let mean_time = |diagonal: bool| {
            let moves: Vec<Move> = Move::ALL.into_iter().filter(|m| m.is_diagonal() == diagonal).collect();
            let t = Instant::now();
            for (i, s) in states.iter().enumerate() {
                black_box(domain.evaluate_move(*s, moves[i % moves.len()]));
            }
            t.elapsed().as_secs_f64() / states.len() as f64
        };
        // warm caches before timing
        mean_time(false);
        let cheap = mean_time(false);
        let diagonal = mean_time(true);
        ExpensiveDelay::from_seconds(ratio * cheap - diagonal)
    }
}

/// Step length and footprint of the grid agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridParams {
    pub step: u32,
    pub footprint: u32,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams { step: 25, footprint: 32 }
    }
}

/// A square agent moving `step` cells at a time in eight directions.
///
/// States are footprint anchors (minimum corner). A move is feasible when
/// the footprint is collision-free at every unit-spaced interpolated
/// position up to and including the endpoint. State ids are `y·width + x`.
#[derive(Debug, Clone)]
pub struct GridDomain {
    map: Arc<GridMap>,
    params: GridParams,
    costs: CostModel,
    goal: GridState,
    actions: Vec<ActionId>,
    delay: ExpensiveDelay,
}

impl GridDomain {
    pub fn new(map: Arc<GridMap>, params: GridParams, goal: GridState) -> Self {
        assert!(params.footprint >= 1, "footprint must be >= 1");
        let actions = Move::ALL
            .iter()
            .enumerate()
            .map(|(i, m)| match m.class() {
                ActionClass::Expensive => ActionId::expensive(i as u32),
                _ => ActionId::cheap(i as u32),
            })
            .collect();
        GridDomain {
            costs: CostModel::new(params.step),
            map,
            params,
            goal,
            actions,
            delay: ExpensiveDelay::none(),
        }
    }

    pub fn with_delay(mut self, delay: ExpensiveDelay) -> Self {
        self.delay = delay;
        self
    }

    pub fn with_goal(mut self, goal: GridState) -> Self {
        self.goal = goal;
        self
    }

    pub fn map(&self) -> &Arc<GridMap> {
        &self.map
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn costs(&self) -> &CostModel {
        &self.costs
    }

    pub fn goal(&self) -> GridState {
        self.goal
    }

    pub fn delay(&self) -> ExpensiveDelay {
        self.delay
    }

    pub fn state_id(&self, s: GridState) -> StateId {
        assert!(
            s.x >= 0 && s.y >= 0 && (s.x as usize) < self.map.width() && (s.y as usize) < self.map.height(),
            "{s:?} outside the map"
        );
        StateId((s.y as usize * self.map.width() + s.x as usize) as u32)
    }

    pub fn grid_state(&self, id: StateId) -> GridState {
        let w = self.map.width();
        GridState::new((id.index() % w) as i64, (id.index() / w) as i64)
    }

    pub fn is_free(&self, s: GridState) -> bool {
        self.map.footprint_feasible(s.x, s.y, self.params.footprint as usize)
    }

    /// Collision-checks one move without any simulated delay.
    pub fn evaluate_move(&self, from: GridState, mv: Move) -> Option<(GridState, Cost)> {
        let (dx, dy) = mv.delta();
        let side = self.params.footprint as usize;
        for i in 1..=self.params.step as i64 {
            if !self.map.footprint_feasible(from.x + i * dx, from.y + i * dy, side) {
                return None;
            }
        }
        let step = self.params.step as i64;
        Some((
            GridState::new(from.x + step * dx, from.y + step * dy),
            self.costs.move_cost(mv),
        ))
    }

    /// Uniformly samples a footprint-feasible anchor by rejection.
    pub fn sample_free_state<R: Rng>(&self, rng: &mut R, attempts: usize) -> Option<GridState> {
        let side = self.params.footprint as usize;
        if self.map.width() < side || self.map.height() < side {
            return None;
        }
        for _ in 0..attempts {
            let s = GridState::new(
                rng.gen_range(0..=(self.map.width() - side)) as i64,
                rng.gen_range(0..=(self.map.height() - side)) as i64,
            );
            if self.is_free(s) {
                return Some(s);
            }
        }
        None
    }
}

impl Domain for GridDomain {
    fn actions(&self) -> &[ActionId] {
        &self.actions
    }

    fn generate_successor(&self, state: StateId, action: ActionId) -> Result<Option<Successor>, DomainError> {
        let mv = *Move::ALL
            .get(action.index() as usize)
            .ok_or_else(|| DomainError::msg(format!("no grid action with index {}", action.index())))?;
        if mv.is_diagonal() {
            self.delay.burn();
        }
        let from = self.grid_state(state);
        Ok(self.evaluate_move(from, mv).map(|(to, cost)| Successor {
            state: self.state_id(to),
            cost,
        }))
    }

    fn heuristic(&self, state: StateId) -> Cost {
        self.costs.distance(self.grid_state(state), self.goal)
    }

    fn pairwise_heuristic(&self, from: StateId, to: StateId) -> Cost {
        self.costs.distance(self.grid_state(from), self.grid_state(to))
    }

    fn is_goal(&self, state: StateId) -> bool {
        self.grid_state(state) == self.goal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(w: usize, h: usize) -> Arc<GridMap> {
        Arc::new(GridMap::new(w, h, "free"))
    }

    #[test]
    fn cost_examples() {
        let c = CostModel::new(25);
        assert_eq!(c.move_cost(Move::East), 25_000);
        assert_eq!(c.move_cost(Move::NorthEast), 35_355);
        assert_eq!(CostModel::new(1).move_cost(Move::SouthWest), 1414);
    }

    #[test]
    fn metric_examples() {
        for step in [1, 3, 25] {
            let c = CostModel::new(step);
            assert_eq!(c.distance(GridState::new(4, 4), GridState::new(4, 4)), 0);
            assert_eq!(c.distance(GridState::new(0, 0), GridState::new(3, 4)), 5000);
        }
    }

    #[test]
    fn metric_never_exceeds_single_moves() {
        for step in 1..60 {
            let c = CostModel::new(step);
            for mv in Move::ALL {
                let (dx, dy) = mv.delta();
                let to = GridState::new(dx * step as i64, dy * step as i64);
                assert!(c.distance(GridState::new(0, 0), to) <= c.move_cost(mv), "step {step} {mv:?}");
            }
        }
    }

    #[test]
    fn move_east_on_free_map() {
        let d = GridDomain::new(free(64, 64), GridParams::default(), GridState::new(0, 0));
        let from = d.state_id(GridState::new(0, 0));
        let east = d.actions()[0];
        let succ = d.generate_successor(from, east).unwrap().unwrap();
        assert_eq!(d.grid_state(succ.state), GridState::new(25, 0));
        assert_eq!(succ.cost, 25_000);
        let ne = d.actions()[4];
        assert_eq!(ne.class(), ActionClass::Expensive);
        let succ = d.generate_successor(from, ne).unwrap().unwrap();
        assert_eq!(d.grid_state(succ.state), GridState::new(25, 25));
        assert_eq!(succ.cost, 35_355);
    }

    #[test]
    fn blocked_interpolation_rejects_move() {
        // (40, 10) lies outside both the start and end squares of the
        // north-east move from the origin, but inside the swept footprint.
        let mut m = GridMap::new(80, 80, "corner");
        m.set_blocked(40, 10, true);
        let d = GridDomain::new(Arc::new(m), GridParams::default(), GridState::new(0, 0));
        assert!(d.is_free(GridState::new(0, 0)));
        assert!(d.is_free(GridState::new(25, 25)));
        assert_eq!(d.evaluate_move(GridState::new(0, 0), Move::NorthEast), None);
        assert!(d.evaluate_move(GridState::new(0, 41), Move::East).is_some());
    }

    #[test]
    fn action_split_is_four_and_four() {
        let d = GridDomain::new(free(64, 64), GridParams::default(), GridState::new(0, 0));
        let exp = d.actions().iter().filter(|a| a.class() == ActionClass::Expensive).count();
        assert_eq!(exp, 4);
        assert_eq!(d.actions().len(), 8);
    }

    #[test]
    fn spin_rate_is_positive() {
        assert!(spins_per_second() > 1e6);
    }
}
