use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use gepase::bench::{self, ExperimentConfig, ProblemInstance};
use gepase::grid2d::{load_movingai_file, GridParams, GridState};

#[derive(Parser)]
#[command(name = "gepase-bench", about = "Grid-world benchmark for the parallel planners")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample start/goal instances for a config and write them as JSON.
    Gen {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "problems.json")]
        out: PathBuf,
    },
    /// Run the sweep described by a config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Instances from `gen`; sampled afresh when omitted.
        #[arg(long)]
        problems: Option<PathBuf>,
    },
    /// Print the optimal cost of one instance.
    Oracle {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[arg(long, value_parser = parse_state)]
        start: GridState,
        #[arg(long, value_parser = parse_state)]
        goal: GridState,
        #[arg(long, default_value_t = GridParams::default().step)]
        step: u32,
        #[arg(long, default_value_t = GridParams::default().footprint)]
        footprint: u32,
    },
}

fn parse_state(s: &str) -> Result<GridState, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x = x.trim().parse().map_err(|e| format!("x: {e}"))?;
    let y = y.trim().parse().map_err(|e| format!("y: {e}"))?;
    Ok(GridState::new(x, y))
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Gen { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let maps = cfg.load_maps()?;
            let problems = bench::generate_problems(&maps, cfg.grid, cfg.problems_per_map, cfg.seed)?;
            std::fs::write(&out, serde_json::to_string_pretty(&problems)?)?;
            println!("wrote {} instances to {}", problems.len(), out.display());
        }
        Command::Run { config, problems } => {
            let cfg = ExperimentConfig::load(&config)?;
            let maps = cfg.load_maps()?;
            let problems: Vec<ProblemInstance> = match problems {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
                None => bench::generate_problems(&maps, cfg.grid, cfg.problems_per_map, cfg.seed)?,
            };
            if let Some(p) = problems.iter().find(|p| p.map_index >= maps.len()) {
                return Err(format!("instance {} refers to map {} but the config has {}", p.id, p.map_index, maps.len()).into());
            }
            let out = bench::run_experiment(&cfg, &maps, &problems)?;
            for (planner, cells) in &out.summary {
                for (threads, c) in cells {
                    let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
                    println!(
                        "{planner:>7} threads={threads:<3} solved={}/{} time_s={} evals={} cost={}",
                        c.solved,
                        c.runs,
                        fmt(c.mean_time_s),
                        fmt(c.mean_edge_evals),
                        fmt(c.mean_cost)
                    );
                }
            }
            println!("results in {}", cfg.output.display());
        }
        Command::Oracle { map, scale, start, goal, step, footprint } => {
            let m = Arc::new(load_movingai_file(&map)?.scale(scale));
            match bench::dijkstra_oracle(&m, GridParams { step, footprint }, start, goal) {
                Some(c) => println!("{c}"),
                None => println!("unreachable"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
