//! Straight-line transcriptions of the four update rules, fed from a clone of
//! the stream the implementation consumes, plus a generator of random small
//! instances. Shared by the core integration tests and the acceptance suite.

#![allow(dead_code)]

use csma_core::kernels::{EnergyState, RngStream};
use csma_core::optimizer::{mean_position, Population, Problem};
use rand::Rng;

pub const SIGMA_M_15: f64 = 0.696_574_502_557_696_8;

pub struct Instance {
    pub problem: Problem,
    pub pop: Population,
    pub rows: Vec<Vec<f64>>,
    pub prev: Vec<Vec<f64>>,
    pub energy: EnergyState,
    pub seed: u64,
}

fn levy_component(rng: &mut RngStream) -> f64 {
    let m = SIGMA_M_15 * rng.standard_normal();
    let mut n = rng.standard_normal();
    while n == 0.0 {
        n = rng.standard_normal();
    }
    0.01 * m / n.abs().powf(1.0 / 1.5)
}

/// Builds a random instance with N ≤ 5, D ≤ 3 from `seed`.
pub fn random_instance(seed: u64) -> Instance {
    let mut g = RngStream::new(seed ^ 0x5eed);
    let n = 2 + g.index(4);
    let d = 1 + g.index(3);
    let lower: Vec<f64> = (0..d).map(|_| -10.0 * g.uniform() - 0.5).collect();
    let upper: Vec<f64> = (0..d).map(|_| 10.0 * g.uniform() + 0.5).collect();
    let problem = Problem::new(lower.clone(), upper.clone(), |x: &[f64]| {
        x.iter().map(|v| (v - 0.3).powi(2)).sum()
    })
    .unwrap();
    let point =
        |g: &mut RngStream| -> Vec<f64> { (0..d).map(|j| lower[j] + (upper[j] - lower[j]) * g.uniform()).collect() };
    let rows: Vec<Vec<f64>> = (0..n).map(|_| point(&mut g)).collect();
    let prev: Vec<Vec<f64>> = (0..n).map(|_| point(&mut g)).collect();
    let mut pop = Population::from_rows(rows.clone(), &problem);
    pop.set_prev_rows(&prev);
    let max_iters = 3 + g.index(300) as u64;
    let t = 1 + g.index(max_iters as usize) as u64;
    let energy = EnergyState::at(t, max_iters).unwrap();
    Instance {
        problem,
        pop,
        rows,
        prev,
        energy,
        seed: g.next_seed(),
    }
}

trait NextSeed {
    fn next_seed(&mut self) -> u64;
}

impl NextSeed for RngStream {
    fn next_seed(&mut self) -> u64 {
        rand::RngCore::next_u64(self)
    }
}

/// x1 = x_best·E1 + (x_best − x_R·R_B)·rand
pub fn selecting(inst: &Instance, rng: &mut RngStream) -> Vec<f64> {
    let d = inst.pop.dim();
    let r = rng.index(inst.rows.len());
    let mut rb = vec![0.0; d];
    for v in rb.iter_mut() {
        *v = rng.standard_normal();
    }
    let mut rand = vec![0.0; d];
    for v in rand.iter_mut() {
        *v = rng.uniform();
    }
    let best = inst.pop.best_position();
    let mut out = vec![0.0; d];
    for j in 0..d {
        let first = best[j] * inst.energy.e1;
        let second = (best[j] - inst.rows[r][j] * rb[j]) * rand[j];
        out[j] = first + second;
    }
    out
}

/// x2 = x_best·E1 + a·((UB − LB)·rand + LB) + x_M·E1·R_L
pub fn expanding(inst: &Instance, rng: &mut RngStream) -> Vec<f64> {
    let d = inst.pop.dim();
    let n = inst.rows.len() as f64;
    let mut x_m = vec![0.0; d];
    for row in &inst.rows {
        for j in 0..d {
            x_m[j] += row[j];
        }
    }
    for v in x_m.iter_mut() {
        *v /= n;
    }
    let mut rand = vec![0.0; d];
    for v in rand.iter_mut() {
        *v = rng.uniform();
    }
    let mut rl = vec![0.0; d];
    for v in rl.iter_mut() {
        *v = levy_component(rng);
    }
    let (lb, ub) = (inst.problem.lower(), inst.problem.upper());
    let best = inst.pop.best_position();
    let a = 1.5;
    let mut out = vec![0.0; d];
    for j in 0..d {
        let first = best[j] * inst.energy.e1;
        let second = a * ((ub[j] - lb[j]) * rand[j] + lb[j]);
        let third = x_m[j] * inst.energy.e1 * rl[j];
        out[j] = first + second + third;
    }
    out
}

/// x3 = x_best + (x_best − x_R(t))·E1·rand + (x_R(t) − x_R(t−1))·E2·b
pub fn migrating(inst: &Instance, rng: &mut RngStream) -> Vec<f64> {
    let d = inst.pop.dim();
    let r = rng.index(inst.rows.len());
    let r_prev = rng.index(inst.rows.len());
    let mut rand = vec![0.0; d];
    for v in rand.iter_mut() {
        *v = rng.uniform();
    }
    let best = inst.pop.best_position();
    let b = 1.0 - inst.energy.t as f64 / inst.energy.max_iters as f64;
    let mut out = vec![0.0; d];
    for j in 0..d {
        let escape = (best[j] - inst.rows[r][j]) * inst.energy.e1 * rand[j];
        let drift = (inst.rows[r][j] - inst.prev[r_prev][j]) * inst.energy.e2 * b;
        out[j] = best[j] + escape + drift;
    }
    out
}

/// x4 = x_best + c·(x_R(t) − x_R(t−1))·rand + E2·x_R(t)·R_L·d
pub fn mating(inst: &Instance, rng: &mut RngStream) -> Vec<f64> {
    let dim = inst.pop.dim();
    let r = rng.index(inst.rows.len());
    let r_prev = rng.index(inst.rows.len());
    let c = 2.0 * rng.uniform() - 1.0;
    let d: f64 = rng.random_range(-1.0..=1.0);
    let mut rand = vec![0.0; dim];
    for v in rand.iter_mut() {
        *v = rng.uniform();
    }
    let mut rl = vec![0.0; dim];
    for v in rl.iter_mut() {
        *v = levy_component(rng);
    }
    let best = inst.pop.best_position();
    let mut out = vec![0.0; dim];
    for j in 0..dim {
        let spawn = c * (inst.rows[r][j] - inst.prev[r_prev][j]) * rand[j];
        let last = inst.energy.e2 * inst.rows[r][j] * rl[j] * d;
        out[j] = best[j] + spawn + last;
    }
    out
}

pub fn mean_of(inst: &Instance) -> Vec<f64> {
    mean_position(&inst.pop)
}

/// Largest relative deviation between two vectors.
pub fn max_rel_err(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            if x == y {
                0.0
            } else {
                (x - y).abs() / x.abs().max(y.abs())
            }
        })
        .fold(0.0, f64::max)
}
