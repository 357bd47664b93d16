//! Seed-driven random quantities and scheduled parameters used by the
//! optimizer's update rules.

mod energy;
mod rng;
mod steps;
mod walk;

pub use energy::{control_b, control_c, control_c_from_uniform, control_d, energy_e1, energy_e2, EnergyState};
pub use rng::{RngStream, StreamDomain, MAX_INDIVIDUALS, MAX_ITERATIONS};
pub use steps::{brownian_step, levy_sigma_m, levy_step, LevyParams};
pub use walk::{max_step_length, random_walk, write_walk_csv, WalkKind};
