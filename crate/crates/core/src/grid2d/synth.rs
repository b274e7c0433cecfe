use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::map::GridMap;

/// A map of random axis-aligned rectangular obstacles, placed until roughly
/// `coverage` of the cells are blocked. Deterministic in `seed`.
pub fn random_obstacle_map(
    width: usize,
    height: usize,
    coverage: f64,
    max_side: usize,
    seed: u64,
    name: impl Into<String>,
) -> GridMap {
    assert!((0.0..1.0).contains(&coverage), "coverage must be in [0, 1)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = GridMap::new(width, height, name);
    let target = (coverage * (width * height) as f64) as usize;
    let max_side = max_side.clamp(1, width.min(height).max(1));
    let mut guard = 0;
    while map.blocked_count() < target && guard < 100_000 {
        guard += 1;
        let w = rng.gen_range(1..=max_side);
        let h = rng.gen_range(1..=max_side);
        let x0 = rng.gen_range(0..=width - w);
        let y0 = rng.gen_range(0..=height - h);
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                map.set_blocked(x, y, true);
            }
        }
    }
    map
}
