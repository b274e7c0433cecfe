//! Plans one grid instance with w-GePA*SE and prints the path.
//!
//! cargo run --release --example plan_grid -- [map] [threads]

use std::sync::Arc;

use gepase::bench::generate_problems;
use gepase::grid2d::{load_movingai_file, ExpensiveDelay, GridDomain, GridParams};
use gepase::{plan_gepase, PlannerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let map_path = args.next().unwrap_or_else(|| "maps/rooms0.map".into());
    let threads: usize = args.next().map_or(Ok(4), |s| s.parse())?;

    let map = Arc::new(load_movingai_file(&map_path)?.scale(4));
    let params = GridParams { step: 10, footprint: 12 };
    let problem = generate_problems(&[Arc::clone(&map)], params, 1, 7)?.remove(0);

    let probe = GridDomain::new(Arc::clone(&map), params, problem.goal);
    let delay = ExpensiveDelay::calibrate(&probe, 30.0, 1000, 7);
    let domain = probe.with_delay(delay);

    let config = PlannerConfig::new(5.0, 5.0, threads)?;
    let result = plan_gepase(&domain, domain.state_id(problem.start), &config)?;
    println!(
        "{:?} -> {:?}: {} in {:?}, {} edge evaluations, {} expansions",
        problem.start, problem.goal, result.status, result.stats.wall_time, result.stats.edge_evaluations,
        result.stats.state_expansions
    );
    if let Some(path) = result.path {
        println!("cost {} (optimal {}, bound {})", path.cost, problem.oracle_cost, 5 * problem.oracle_cost);
        for s in &path.states {
            let g = domain.grid_state(*s);
            println!("  {} {}", g.x, g.y);
        }
    }
    Ok(())
}
