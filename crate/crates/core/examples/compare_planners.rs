//! Runs all four planners on the same instance and compares cost, time and
//! edge evaluations against the exact optimum.
//!
//! cargo run --release --example compare_planners -- [rc] [threads]

use std::sync::Arc;

use gepase::bench::generate_problems;
use gepase::grid2d::synth::random_obstacle_map;
use gepase::grid2d::{ExpensiveDelay, GridDomain, GridParams};
use gepase::{PlannerConfig, PlannerKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let rc: f64 = args.next().map_or(Ok(30.0), |s| s.parse())?;
    let threads: usize = args.next().map_or(Ok(4), |s| s.parse())?;

    let map = Arc::new(random_obstacle_map(64, 64, 0.18, 8, 11, "cmp").scale(8));
    let params = GridParams::default();
    let problems = generate_problems(&[Arc::clone(&map)], params, 3, 11)?;
    let probe = GridDomain::new(Arc::clone(&map), params, problems[0].goal);
    let delay = ExpensiveDelay::calibrate(&probe, rc, 2000, 11);

    println!("{:>7} {:>8} {:>10} {:>10} {:>7}", "planner", "instance", "time_ms", "evals", "cost/c*");
    for p in &problems {
        let domain = probe.clone().with_goal(p.goal).with_delay(delay);
        for kind in PlannerKind::ALL {
            let n = if kind.is_parallel() { threads } else { 1 };
            let config = PlannerConfig::new(50.0, 50.0, n)?;
            let r = kind.plan(&domain, domain.state_id(p.start), &config)?;
            let ratio = r.cost().map_or(f64::NAN, |c| c as f64 / p.oracle_cost as f64);
            println!(
                "{:>7} {:>8} {:>10.3} {:>10} {:>7.3}",
                kind.name(),
                p.id,
                r.stats.wall_time.as_secs_f64() * 1e3,
                r.stats.edge_evaluations,
                ratio
            );
        }
    }
    Ok(())
}
