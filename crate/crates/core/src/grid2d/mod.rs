//! 2D grid-world benchmark domain.
//!
//! A square agent moves a fixed step in eight directions over a MovingAI
//! occupancy map. The four diagonal moves are the expensive class: their
//! evaluation carries extra busy work sized so that their mean evaluation
//! time is a chosen multiple of the cheap moves'.

mod domain;
mod map;
pub mod synth;

pub use domain::{
    spin, spins_per_second, CostModel, ExpensiveDelay, GridDomain, GridParams, GridState, Move, COST_SCALE,
};
pub use map::{load_movingai_file, load_movingai_map, GridMap, MapError};
