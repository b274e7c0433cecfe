mod common;

use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use gepase::bench::{
    dijkstra_oracle, generate_problems, read_runs_csv, run_experiment, summarize, ExperimentConfig, Summary,
};
use gepase::grid2d::synth::random_obstacle_map;
use gepase::grid2d::{GridDomain, GridParams};
use gepase::{PlannerConfig, PlannerKind, SearchStatus};

fn small_config(out: &Path, planners: Vec<PlannerKind>) -> ExperimentConfig {
    ExperimentConfig {
        maps: vec![common::maps_dir().join("rooms0.map"), common::maps_dir().join("rooms3.map")],
        scale: 2,
        problems_per_map: 3,
        planners,
        threads: vec![1, 3],
        w: 3.0,
        epsilon: 3.0,
        rc: 5.0,
        timeout_s: 30.0,
        seed: 17,
        output: out.to_path_buf(),
        grid: GridParams { step: 4, footprint: 5 },
        warmup: false,
        calibration_samples: 200,
    }
}

#[test]
fn single_wastar_run_gives_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path(), vec![PlannerKind::WAStar]);
    cfg.maps.truncate(1);
    cfg.problems_per_map = 1;
    let maps = cfg.load_maps().unwrap();
    let problems = generate_problems(&maps, cfg.grid, 1, cfg.seed).unwrap();
    let out = run_experiment(&cfg, &maps, &problems).unwrap();
    assert_eq!(out.reports.len(), 1);
    let rows = read_runs_csv(&dir.path().join("runs.csv")).unwrap();
    assert_eq!(rows, out.reports);
    assert_eq!(rows[0].threads, 1);
}

#[test]
fn aggregates_recompute_from_csv_and_schema_is_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let run = |dir: &Path| {
        let cfg = small_config(dir, PlannerKind::ALL.to_vec());
        let maps = cfg.load_maps().unwrap();
        let problems = generate_problems(&maps, cfg.grid, cfg.problems_per_map, cfg.seed).unwrap();
        run_experiment(&cfg, &maps, &problems).unwrap()
    };
    let out = run(a.path());
    // wA* once, three planners at two budgets, six instances each.
    assert_eq!(out.reports.len(), 7 * 6);
    for r in &out.reports {
        assert_eq!(r.status, SearchStatus::Solved);
        assert!(r.within_bound(3.0), "{r:?}");
    }

    let rows = read_runs_csv(&a.path().join("runs.csv")).unwrap();
    let json: Summary =
        serde_json::from_str(&std::fs::read_to_string(a.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summarize(&rows), json);
    assert_eq!(json, out.summary);
    for (planner, cells) in &json {
        for c in cells.values() {
            assert_eq!(c.common, 6, "{planner}");
        }
    }

    run(b.path());
    let header = |d: &Path| {
        let text = std::fs::read_to_string(d.join("runs.csv")).unwrap();
        (text.lines().next().unwrap().to_string(), text.lines().count())
    };
    assert_eq!(header(a.path()), header(b.path()));
    assert_eq!(
        header(a.path()).0,
        "planner,threads,rc,instance_id,status,time_s,edge_evals,expansions,cost,oracle_cost"
    );

    let paths = std::fs::read_dir(a.path().join("paths")).unwrap().count();
    assert_eq!(paths, 6 * 4);
    let poly = std::fs::read_to_string(a.path().join("paths/0_gepase.txt")).unwrap();
    let first: Vec<i64> = poly.lines().next().unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first.len(), 2);
}

#[test]
fn oracle_bounds_every_planner_and_is_met_at_unit_weights() {
    let map = Arc::new(random_obstacle_map(32, 32, 0.18, 4, 123, "m32"));
    let params = GridParams { step: 1, footprint: 1 };
    let problems = generate_problems(&[Arc::clone(&map)], params, 20, 4).unwrap();
    for p in &problems {
        assert_eq!(dijkstra_oracle(&map, params, p.start, p.goal), Some(p.oracle_cost));
        let d = GridDomain::new(Arc::clone(&map), params, p.goal);
        for kind in PlannerKind::ALL {
            for (w, n) in [(1.0, 1), (1.0, 4), (4.0, 4)] {
                let r = kind.plan(&d, d.state_id(p.start), &PlannerConfig::new(w, w, n).unwrap()).unwrap();
                let c = r.cost().unwrap();
                assert!(c >= p.oracle_cost);
                if w == 1.0 {
                    assert_eq!(c, p.oracle_cost, "{kind} n={n} instance {}", p.id);
                }
            }
        }
    }
}

#[test]
fn config_file_round_trips_through_toml() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(Path::new("out"), vec![PlannerKind::Gepase]);
    let path = dir.path().join("c.toml");
    std::fs::write(&path, toml::to_string(&cfg).unwrap()).unwrap();
    let loaded = ExperimentConfig::load(&path).unwrap();
    assert_eq!(loaded.output, dir.path().join("out"));
    assert_eq!(loaded.grid, cfg.grid);
    assert_eq!(loaded.maps, cfg.maps);
}

#[test]
fn cli_gen_run_and_oracle() {
    let exe = env!("CARGO_BIN_EXE_gepase-bench");
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(Path::new("results"), vec![PlannerKind::WAStar, PlannerKind::Gepase]);
    cfg.threads = vec![2];
    let cfg_path = dir.path().join("sweep.toml");
    std::fs::write(&cfg_path, toml::to_string(&cfg).unwrap()).unwrap();
    let problems = dir.path().join("problems.json");

    let gen = Command::new(exe)
        .args(["gen", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&problems)
        .output()
        .unwrap();
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    let parsed: Vec<gepase::bench::ProblemInstance> =
        serde_json::from_str(&std::fs::read_to_string(&problems).unwrap()).unwrap();
    assert_eq!(parsed.len(), 6);

    let run = Command::new(exe)
        .args(["run", "--config"])
        .arg(&cfg_path)
        .arg("--problems")
        .arg(&problems)
        .output()
        .unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let rows = read_runs_csv(&dir.path().join("results/runs.csv")).unwrap();
    assert_eq!(rows.len(), 12);

    let p = &parsed[0];
    let oracle = Command::new(exe)
        .args(["oracle", "--map"])
        .arg(&cfg.maps[0])
        .args(["--scale", "2", "--step", "4", "--footprint", "5"])
        .arg(format!("--start={},{}", p.start.x, p.start.y))
        .arg(format!("--goal={},{}", p.goal.x, p.goal.y))
        .output()
        .unwrap();
    assert!(oracle.status.success(), "{}", String::from_utf8_lossy(&oracle.stderr));
    assert_eq!(String::from_utf8(oracle.stdout).unwrap().trim(), p.oracle_cost.to_string());

    let bad = Command::new(exe).args(["run", "--config", "/nonexistent.toml"]).output().unwrap();
    assert!(!bad.status.success());
}
