use crate::error::Result;
use crate::kernels::{RngStream, StreamDomain};
use crate::optimizer::{Problem, RunConfig, RunResult};

fn sample_point(problem: &Problem, rng: &mut RngStream) -> Vec<f64> {
    problem
        .lower()
        .iter()
        .zip(problem.upper())
        .map(|(lo, hi)| ((hi - lo) * rng.uniform() + lo).min(*hi))
        .collect()
}

/// Uniform random search with the optimizer's budget of `N·(T+1)` evaluations.
///
/// Evaluation `k` draws from the stream of slot `(k / N, k % N)`. The trace
/// holds the best-so-far value after each block of `N` evaluations following
/// the first block, mirroring the optimizer's per-iteration trace.
pub fn random_search(problem: &Problem, config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let n = config.pop_size as u64;
    let mut state = SearchState::default();
    let mut trace = Vec::with_capacity(config.max_iters as usize);
    for t in 0..=config.max_iters {
        for i in 0..n {
            let mut rng = RngStream::for_slot(config.seed, StreamDomain::RandomSearch, t, i);
            state.consider(problem, sample_point(problem, &mut rng));
        }
        if t > 0 {
            trace.push(state.best_fitness);
        }
    }
    Ok(state.finish(trace))
}

/// Random search with an explicit evaluation budget; the trace has one entry
/// per evaluation.
pub fn random_search_budget(problem: &Problem, budget: u64, seed: u64) -> RunResult {
    let mut rng = RngStream::for_slot(seed, StreamDomain::RandomSearch, 0, 0);
    let mut state = SearchState::default();
    let mut trace = Vec::with_capacity(budget as usize);
    for _ in 0..budget {
        state.consider(problem, sample_point(problem, &mut rng));
        trace.push(state.best_fitness);
    }
    state.finish(trace)
}

struct SearchState {
    best_position: Vec<f64>,
    best_fitness: f64,
    evaluations: u64,
}

impl Default for SearchState {
    fn default() -> Self {
        Self {
            best_position: Vec::new(),
            best_fitness: f64::INFINITY,
            evaluations: 0,
        }
    }
}

impl SearchState {
    fn consider(&mut self, problem: &Problem, x: Vec<f64>) {
        let f = problem.evaluate(&x);
        self.evaluations += 1;
        if self.best_position.is_empty() || (f.is_finite() && f < self.best_fitness) {
            self.best_fitness = if f.is_finite() { f } else { f64::INFINITY };
            self.best_position = x;
        }
    }

    fn finish(self, trace: Vec<f64>) -> RunResult {
        RunResult {
            best_position: self.best_position,
            best_fitness: self.best_fitness,
            trace,
            evaluations: self.evaluations,
        }
    }
}
