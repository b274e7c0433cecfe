//! A small programmatic sweep: GePA*SE vs ePA*SE vs PA*SE vs wA*, written to
//! runs.csv / summary.json / paths/ under the given directory.
//!
//! cargo run --release --example mini_sweep -- [out_dir]

use std::path::PathBuf;
use std::sync::Arc;

use gepase::bench::{generate_problems, run_sweep, write_outputs, ExperimentConfig};
use gepase::grid2d::synth::random_obstacle_map;
use gepase::grid2d::GridParams;
use gepase::PlannerKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "results/mini".into()));
    let config = ExperimentConfig {
        maps: vec!["in-memory".into()],
        scale: 4,
        problems_per_map: 5,
        planners: PlannerKind::ALL.to_vec(),
        threads: vec![2, 4],
        w: 10.0,
        epsilon: 10.0,
        rc: 30.0,
        timeout_s: 30.0,
        seed: 5,
        output: out.clone(),
        grid: GridParams { step: 12, footprint: 16 },
        warmup: true,
        calibration_samples: 1000,
    };
    let maps = vec![Arc::new(random_obstacle_map(64, 64, 0.15, 8, 5, "mini").scale(config.scale))];
    let problems = generate_problems(&maps, config.grid, config.problems_per_map, config.seed)?;
    let result = run_sweep(&config, &maps, &problems)?;
    write_outputs(&result, &out)?;

    let worst = result
        .reports
        .iter()
        .filter_map(|r| r.cost.map(|c| c as f64 / r.oracle_cost as f64))
        .fold(1.0, f64::max);
    println!("{} runs, worst cost ratio {worst:.3} (bound {})", result.reports.len(), config.epsilon);
    println!("{}", serde_json::to_string_pretty(&result.summary)?);
    println!("written to {}", out.display());
    Ok(())
}
