//! The four candidate-generation rules and the rule scheduler.
//!
//! Each rule reads the incumbent best and randomly chosen members of the
//! current (and previous) generation. Products between vectors and random
//! vectors are component-wise; `c`, `d` and the energies are scalars per call.
//! The order in which each rule consumes its stream is part of its contract
//! and is listed on every function.

use serde::{Deserialize, Serialize};

use super::population::Population;
use super::problem::Problem;
use crate::kernels::{brownian_step, control_c, control_d, levy_step, EnergyState, LevyParams, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    /// Selecting the search space.
    Selecting = 1,
    /// Expanding the search from river to ocean.
    Expanding = 2,
    /// Migrating: focused search with predator escape.
    Migrating = 3,
    /// Mating: final refinement around the incumbent.
    Mating = 4,
}

/// Last iteration of the exploration phase, `⌈2T/3⌉`.
pub fn exploration_end(max_iters: u64) -> u64 {
    (2 * max_iters).div_ceil(3)
}

/// Picks the rule for one individual at iteration `t`. Consumes one uniform.
///
/// Iterations up to `⌈2T/3⌉` choose between selecting (probability
/// `p_stage1`) and expanding; later iterations choose between migrating
/// (probability `p_stage3`) and mating.
pub fn select_stage(t: u64, max_iters: u64, p_stage1: f64, p_stage3: f64, rng: &mut RngStream) -> Stage {
    if t <= exploration_end(max_iters) {
        if rng.bernoulli(p_stage1) {
            Stage::Selecting
        } else {
            Stage::Expanding
        }
    } else if rng.bernoulli(p_stage3) {
        Stage::Migrating
    } else {
        Stage::Mating
    }
}

/// `best·E1 + (best − x_R∘R_B)∘rand`.
///
/// Draw order: index `R`, Brownian vector `R_B` (D normals), `rand` (D uniforms).
pub fn stage1_update(pop: &Population, energy: &EnergyState, rng: &mut RngStream) -> Vec<f64> {
    let d = pop.dim();
    let r = rng.index(pop.len());
    let rb = brownian_step(rng, d);
    let u = rng.uniform_vec(d);
    selecting_rule(pop.best_position(), pop.position(r), &rb, &u, energy.e1)
}

pub fn selecting_rule(best: &[f64], xr: &[f64], rb: &[f64], u: &[f64], e1: f64) -> Vec<f64> {
    (0..best.len())
        .map(|j| best[j] * e1 + (best[j] - xr[j] * rb[j]) * u[j])
        .collect()
}

/// `best·E1 + a·((UB − LB)∘rand + LB) + x_M·E1∘R_L`.
///
/// `mean` is the population mean for this iteration.
/// Draw order: `rand` (D uniforms), Lévy vector `R_L`.
pub fn stage2_update(
    pop: &Population,
    problem: &Problem,
    mean: &[f64],
    energy: &EnergyState,
    a: f64,
    levy: &LevyParams,
    rng: &mut RngStream,
) -> Vec<f64> {
    let d = pop.dim();
    let u = rng.uniform_vec(d);
    let rl = levy_step(rng, d, levy);
    expanding_rule(
        pop.best_position(),
        problem.lower(),
        problem.upper(),
        mean,
        &u,
        &rl,
        energy.e1,
        a,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn expanding_rule(
    best: &[f64],
    lower: &[f64],
    upper: &[f64],
    mean: &[f64],
    u: &[f64],
    rl: &[f64],
    e1: f64,
    a: f64,
) -> Vec<f64> {
    (0..best.len())
        .map(|j| best[j] * e1 + a * ((upper[j] - lower[j]) * u[j] + lower[j]) + mean[j] * e1 * rl[j])
        .collect()
}

/// `best + (best − x_R(t))·E1∘rand + (x_R(t) − x_R'(t−1))·E2·b`.
///
/// Draw order: index `R` (current generation), index `R'` (previous
/// generation), `rand` (D uniforms).
pub fn stage3_update(pop: &Population, energy: &EnergyState, rng: &mut RngStream) -> Vec<f64> {
    let d = pop.dim();
    let r = rng.index(pop.len());
    let r_prev = rng.index(pop.len());
    let u = rng.uniform_vec(d);
    migrating_rule(
        pop.best_position(),
        pop.position(r),
        pop.prev_position(r_prev),
        &u,
        energy,
    )
}

pub fn migrating_rule(best: &[f64], xr: &[f64], xp: &[f64], u: &[f64], energy: &EnergyState) -> Vec<f64> {
    (0..best.len())
        .map(|j| best[j] + (best[j] - xr[j]) * energy.e1 * u[j] + (xr[j] - xp[j]) * energy.e2 * energy.b)
        .collect()
}

/// `best + c·(x_R(t) − x_R'(t−1))∘rand + E2·x_R(t)∘R_L·d`.
///
/// Draw order: index `R`, index `R'`, `c`, `d`, `rand` (D uniforms), Lévy
/// vector `R_L`.
pub fn stage4_update(pop: &Population, energy: &EnergyState, levy: &LevyParams, rng: &mut RngStream) -> Vec<f64> {
    let dim = pop.dim();
    let r = rng.index(pop.len());
    let r_prev = rng.index(pop.len());
    let c = control_c(rng);
    let d = control_d(rng);
    let u = rng.uniform_vec(dim);
    let rl = levy_step(rng, dim, levy);
    mating_rule(
        pop.best_position(),
        pop.position(r),
        pop.prev_position(r_prev),
        &u,
        &rl,
        MatingControls { c, d, e2: energy.e2 },
    )
}

/// Scalar controls of the mating rule.
#[derive(Debug, Clone, Copy)]
pub struct MatingControls {
    pub c: f64,
    pub d: f64,
    pub e2: f64,
}

pub fn mating_rule(best: &[f64], xr: &[f64], xp: &[f64], u: &[f64], rl: &[f64], k: MatingControls) -> Vec<f64> {
    (0..best.len())
        .map(|j| best[j] + k.c * (xr[j] - xp[j]) * u[j] + k.e2 * xr[j] * rl[j] * k.d)
        .collect()
}
