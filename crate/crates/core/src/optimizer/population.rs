use super::problem::Problem;
use crate::kernels::{RngStream, StreamDomain};

/// N×D population stored row-major, with cached fitness and the incumbent.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    dim: usize,
    positions: Vec<f64>,
    fitness: Vec<f64>,
    prev_positions: Vec<f64>,
    generation_start: Vec<f64>,
    best_position: Vec<f64>,
    best_fitness: f64,
    evaluations: u64,
}

impl Population {
    /// Builds a population from explicit rows and evaluates each one.
    pub fn from_rows(rows: Vec<Vec<f64>>, problem: &Problem) -> Self {
        let dim = problem.dim();
        assert!(!rows.is_empty(), "population needs at least one individual");
        let mut positions = Vec::with_capacity(rows.len() * dim);
        for r in &rows {
            assert_eq!(r.len(), dim, "row length must equal problem dimension");
            positions.extend_from_slice(r);
        }
        let fitness: Vec<f64> = rows.iter().map(|r| sanitize(problem.evaluate(r))).collect();
        let best = fitness
            .iter()
            .enumerate()
            .fold(0, |b, (i, f)| if *f < fitness[b] { i } else { b });
        Self {
            dim,
            best_position: rows[best].clone(),
            best_fitness: fitness[best],
            prev_positions: positions.clone(),
            generation_start: positions.clone(),
            evaluations: rows.len() as u64,
            positions,
            fitness,
        }
    }

    pub fn len(&self) -> usize {
        self.fitness.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fitness.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.positions[i * self.dim..(i + 1) * self.dim]
    }

    /// Position of individual `i` in the previous generation.
    pub fn prev_position(&self, i: usize) -> &[f64] {
        &self.prev_positions[i * self.dim..(i + 1) * self.dim]
    }

    pub fn positions(&self) -> impl Iterator<Item = &[f64]> {
        self.positions.chunks_exact(self.dim)
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Starts a new generation: the previous-generation snapshot becomes the
    /// population as it stood at the start of the generation that just ended.
    pub fn begin_generation(&mut self) {
        std::mem::swap(&mut self.prev_positions, &mut self.generation_start);
        self.generation_start.copy_from_slice(&self.positions);
    }

    /// Replaces the whole previous-generation snapshot. Test hook for
    /// handcrafted populations.
    pub fn set_prev_rows(&mut self, rows: &[Vec<f64>]) {
        assert_eq!(rows.len(), self.len());
        for (i, r) in rows.iter().enumerate() {
            self.prev_positions[i * self.dim..(i + 1) * self.dim].copy_from_slice(r);
        }
    }
}

/// Non-finite objective values are mapped to +∞ so they never win a comparison.
fn sanitize(f: f64) -> f64 {
    if f.is_finite() {
        f
    } else {
        f64::INFINITY
    }
}

/// Uniform initial population, one stream per row:
/// `x[i][j] = (upper[j] − lower[j])·u + lower[j]`.
pub fn init_population(problem: &Problem, pop_size: usize, seed: u64) -> Population {
    let rows = (0..pop_size)
        .map(|i| {
            let mut rng = RngStream::for_slot(seed, StreamDomain::Init, 0, i as u64);
            problem
                .lower()
                .iter()
                .zip(problem.upper())
                .map(|(lo, hi)| ((hi - lo) * rng.uniform() + lo).min(*hi))
                .collect()
        })
        .collect();
    Population::from_rows(rows, problem)
}

/// Component-wise mean of all positions.
pub fn mean_position(pop: &Population) -> Vec<f64> {
    let mut mean = vec![0.0; pop.dim()];
    for row in pop.positions() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    let n = pop.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);
    mean
}

/// Evaluates `candidate` and keeps it in slot `i` iff it is strictly better.
///
/// Costs exactly one evaluation. A non-finite objective value rejects the
/// candidate. Returns whether the candidate was accepted.
pub fn greedy_replace(i: usize, pop: &mut Population, candidate: &[f64], problem: &Problem) -> bool {
    let value = problem.evaluate(candidate);
    pop.evaluations += 1;
    if !value.is_finite() || value >= pop.fitness[i] {
        return false;
    }
    let d = pop.dim;
    pop.positions[i * d..(i + 1) * d].copy_from_slice(candidate);
    pop.fitness[i] = value;
    if value < pop.best_fitness {
        pop.best_fitness = value;
        pop.best_position.copy_from_slice(candidate);
    }
    true
}
