//! The calico salmon migration optimizer.
//!
//! A run initializes a uniform population, then for `T` iterations lets every
//! individual draw one candidate from one of four update rules, clamps it to
//! the box and keeps it only if it improves on the individual it came from.
//! The first `⌈2T/3⌉` iterations use the exploratory rules (selecting,
//! expanding); the rest use the exploitative ones (migrating, mating).

mod population;
mod problem;
mod stages;

use serde::{Deserialize, Serialize};

pub use population::{greedy_replace, init_population, mean_position, Population};
pub use problem::{clamp_to_bounds, Objective, Problem};
pub use stages::{
    expanding_rule, exploration_end, mating_rule, migrating_rule, select_stage, selecting_rule, stage1_update,
    stage2_update, stage3_update, stage4_update, MatingControls, Stage,
};

use crate::error::{CsmaError, Result};
use crate::kernels::{EnergyState, LevyParams, RngStream, StreamDomain, MAX_INDIVIDUALS, MAX_ITERATIONS};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryPolicy {
    #[default]
    Clamp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub pop_size: usize,
    pub max_iters: u64,
    pub seed: u64,
    pub p_stage1: f64,
    pub p_stage3: f64,
    pub boundary_policy: BoundaryPolicy,
    /// Scale of the random-point term in the expanding rule.
    pub a: f64,
    pub levy: LevyParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pop_size: 30,
            max_iters: 500,
            seed: 0,
            p_stage1: 0.5,
            p_stage3: 0.5,
            boundary_policy: BoundaryPolicy::Clamp,
            a: 1.5,
            levy: LevyParams::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 || self.pop_size as u64 >= MAX_INDIVIDUALS {
            return Err(CsmaError::InvalidConfig(format!(
                "population size must be in [2, {MAX_INDIVIDUALS}), got {}",
                self.pop_size
            )));
        }
        if self.max_iters < 1 || self.max_iters >= MAX_ITERATIONS {
            return Err(CsmaError::InvalidConfig(format!(
                "max iterations must be in [1, {MAX_ITERATIONS}), got {}",
                self.max_iters
            )));
        }
        for (name, p) in [("p_stage1", self.p_stage1), ("p_stage3", self.p_stage3)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(CsmaError::InvalidConfig(format!("{name} must be in [0, 1], got {p}")));
            }
        }
        if !self.a.is_finite() {
            return Err(CsmaError::InvalidConfig(format!("a must be finite, got {}", self.a)));
        }
        Ok(())
    }

    /// Objective evaluations one run consumes: `N·(T+1)`.
    pub fn budget(&self) -> u64 {
        self.pop_size as u64 * (self.max_iters + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each iteration.
    pub trace: Vec<f64>,
    pub evaluations: u64,
}

/// Runs the optimizer to completion.
pub fn optimize(problem: &Problem, config: &RunConfig) -> Result<RunResult> {
    optimize_with(problem, config, |_, _| {})
}

/// Like [`optimize`], calling `observe(t, population)` after every iteration.
pub fn optimize_with<F>(problem: &Problem, config: &RunConfig, mut observe: F) -> Result<RunResult>
where
    F: FnMut(u64, &Population),
{
    config.validate()?;
    let n = config.pop_size;
    let big_t = config.max_iters;
    let mut pop = init_population(problem, n, config.seed);
    let mut trace = Vec::with_capacity(big_t as usize);

    for t in 1..=big_t {
        pop.begin_generation();
        let energy = EnergyState::at(t, big_t)?;
        let mean = if t <= exploration_end(big_t) {
            mean_position(&pop)
        } else {
            Vec::new()
        };
        for i in 0..n {
            let mut rng = RngStream::for_slot(config.seed, StreamDomain::Step, t, i as u64);
            let stage = select_stage(t, big_t, config.p_stage1, config.p_stage3, &mut rng);
            let mut candidate = match stage {
                Stage::Selecting => stage1_update(&pop, &energy, &mut rng),
                Stage::Expanding => stage2_update(&pop, problem, &mean, &energy, config.a, &config.levy, &mut rng),
                Stage::Migrating => stage3_update(&pop, &energy, &mut rng),
                Stage::Mating => stage4_update(&pop, &energy, &config.levy, &mut rng),
            };
            match config.boundary_policy {
                BoundaryPolicy::Clamp => clamp_to_bounds(&mut candidate, problem),
            }
            greedy_replace(i, &mut pop, &candidate, problem);
        }
        trace.push(pop.best_fitness());
        observe(t, &pop);
    }

    Ok(RunResult {
        best_position: pop.best_position().to_vec(),
        best_fitness: pop.best_fitness(),
        trace,
        evaluations: pop.evaluations(),
    })
}
