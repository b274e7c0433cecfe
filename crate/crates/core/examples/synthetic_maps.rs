//! Writes seeded random-obstacle maps in MovingAI format.
//!
//! cargo run --example synthetic_maps -- <out_dir> [count] [side]

use std::path::PathBuf;

use gepase::grid2d::synth::random_obstacle_map;

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "maps".into()));
    let count: u64 = args.next().map_or(5, |s| s.parse().expect("count"));
    let side: usize = args.next().map_or(64, |s| s.parse().expect("side"));
    std::fs::create_dir_all(&dir)?;
    for i in 0..count {
        let name = format!("rooms{i}");
        let map = random_obstacle_map(side, side, 0.18, side / 8, 1000 + i, &name);
        let path = dir.join(format!("{name}.map"));
        std::fs::write(&path, map.to_movingai())?;
        println!("{} ({} blocked)", path.display(), map.blocked_count());
    }
    Ok(())
}
