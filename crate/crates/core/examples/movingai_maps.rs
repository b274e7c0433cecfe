//! Loads a MovingAI map, scales it and queries the exact Dijkstra oracle.
//!
//! cargo run --release --example movingai_maps -- [map] [scale]

use std::sync::Arc;

use gepase::bench::{dijkstra_costs, dijkstra_oracle};
use gepase::grid2d::{load_movingai_file, GridDomain, GridParams, GridState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "maps/rooms1.map".into());
    let scale: usize = args.next().map_or(Ok(4), |s| s.parse())?;

    let base = load_movingai_file(&path)?;
    let map = Arc::new(base.scale(scale));
    println!(
        "{}: {}x{} -> {}x{}, {:.1}% blocked",
        map.name(),
        base.width(),
        base.height(),
        map.width(),
        map.height(),
        100.0 * map.blocked_count() as f64 / (map.width() * map.height()) as f64
    );

    let params = GridParams { step: 8, footprint: 8 };
    let probe = GridDomain::new(Arc::clone(&map), params, GridState::new(0, 0));
    let mut rng = rand::thread_rng();
    let start = probe.sample_free_state(&mut rng, 10_000).ok_or("no free anchor")?;
    let reachable = dijkstra_costs(&map, params, start);
    let (far, far_cost) = reachable.iter().max_by_key(|(_, c)| **c).expect("start is reachable");
    println!("from {start:?}: {} reachable states, farthest {far:?} at cost {far_cost}", reachable.len());
    println!("oracle check: {:?}", dijkstra_oracle(&map, params, start, *far));
    println!("heuristic to it: {}", probe.costs().distance(start, *far));
    Ok(())
}
