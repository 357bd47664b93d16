use std::fmt;
use std::sync::Arc;

use crate::error::{CsmaError, Result};

pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A box-constrained minimization problem.
#[derive(Clone)]
pub struct Problem {
    objective: Objective,
    lower: Vec<f64>,
    upper: Vec<f64>,
    known_optimum: Option<f64>,
}

impl Problem {
    /// Bounds may coincide on a coordinate (a fixed coordinate) but may not
    /// cross.
    pub fn new<F>(lower: Vec<f64>, upper: Vec<f64>, objective: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::from_arc(lower, upper, Arc::new(objective))
    }

    pub fn from_arc(lower: Vec<f64>, upper: Vec<f64>, objective: Objective) -> Result<Self> {
        if lower.is_empty() {
            return Err(CsmaError::InvalidConfig("problem dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(CsmaError::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(CsmaError::InvalidConfig(format!(
                    "bad bounds on coordinate {j}: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self {
            objective,
            lower,
            upper,
            known_optimum: None,
        })
    }

    /// Same bounds `[lower, upper]` on every one of `dim` coordinates.
    pub fn uniform_box<F>(dim: usize, lower: f64, upper: f64, objective: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(vec![lower; dim], vec![upper; dim], objective)
    }

    pub fn with_known_optimum(mut self, value: f64) -> Self {
        self.known_optimum = Some(value);
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        (self.objective)(x)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("dim", &self.dim())
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("known_optimum", &self.known_optimum)
            .finish_non_exhaustive()
    }
}

/// Component-wise `min(max(x[j], lower[j]), upper[j])`.
pub fn clamp_to_bounds(x: &mut [f64], problem: &Problem) {
    for ((v, lo), hi) in x.iter_mut().zip(problem.lower()).zip(problem.upper()) {
        *v = v.max(*lo).min(*hi);
    }
}
