//! Plugging a custom graph into the planners.
//!
//! States are integers on a line. Stepping by one is cheap to evaluate; the
//! long jump is "expensive" (it sleeps, standing in for a slow collision
//! check or simulation), so w-GePA*SE hands it to worker threads while
//! expanding the cheap steps inline.

use std::thread;
use std::time::Duration;

use gepase::{
    plan_gepase, plan_wastar, ActionId, Cost, Domain, DomainError, PlannerConfig, StateId, Successor,
};

const LEN: u32 = 400;
const JUMP: u32 = 7;
const JUMP_COST: Cost = 5;

struct Line {
    goal: u32,
    actions: [ActionId; 3],
}

impl Line {
    fn new(goal: u32) -> Self {
        Line {
            goal,
            actions: [ActionId::cheap(0), ActionId::cheap(1), ActionId::expensive(2)],
        }
    }

    fn dist(a: u32, b: u32) -> Cost {
        // Cheapest cost per unit of distance is JUMP_COST / JUMP.
        (a.abs_diff(b) as Cost * JUMP_COST).div_ceil(JUMP as Cost)
    }
}

impl Domain for Line {
    fn actions(&self) -> &[ActionId] {
        &self.actions
    }

    fn generate_successor(&self, state: StateId, action: ActionId) -> Result<Option<Successor>, DomainError> {
        let s = state.0;
        let next = match action.index() {
            0 => s.checked_add(1),
            1 => s.checked_sub(1),
            2 => {
                thread::sleep(Duration::from_micros(200));
                s.checked_add(JUMP)
            }
            _ => return Err(DomainError::msg(format!("unknown action {action:?}"))),
        };
        Ok(next.filter(|&n| n < LEN && n % 50 != 49).map(|n| Successor {
            state: StateId(n),
            cost: if action.index() == 2 { JUMP_COST } else { 1 },
        }))
    }

    fn heuristic(&self, state: StateId) -> Cost {
        Self::dist(state.0, self.goal)
    }

    fn pairwise_heuristic(&self, from: StateId, to: StateId) -> Cost {
        Self::dist(from.0, to.0)
    }

    fn is_goal(&self, state: StateId) -> bool {
        state.0 == self.goal
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain = Line::new(320);
    let config = PlannerConfig::new(2.0, 2.0, 4)?;
    for (name, r) in [
        ("wA*", plan_wastar(&domain, StateId(3), &config)?),
        ("GePA*SE", plan_gepase(&domain, StateId(3), &config)?),
    ] {
        let path = r.path.expect("line is connected past the walls by jumps");
        println!(
            "{name:>8}: cost {} over {} edges, {} evaluations, {:?}",
            path.cost,
            path.len(),
            r.stats.edge_evaluations,
            r.stats.wall_time
        );
    }
    Ok(())
}
