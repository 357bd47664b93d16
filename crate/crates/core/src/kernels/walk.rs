//! Cumulative random walks built from the step kernels, for trajectory plots.

use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rng::{RngStream, StreamDomain};
use super::steps::{brownian_step, levy_step, LevyParams};
use crate::error::{CsmaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Brownian,
    Levy,
}

impl FromStr for WalkKind {
    type Err = CsmaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brownian" => Ok(WalkKind::Brownian),
            "levy" => Ok(WalkKind::Levy),
            other => Err(CsmaError::InvalidInput(format!("unknown walk kind `{other}`"))),
        }
    }
}

/// Cumulative positions after each of `steps` steps, starting at the origin.
///
/// `levy` is only read for [`WalkKind::Levy`].
pub fn random_walk(kind: WalkKind, steps: usize, dims: usize, seed: u64, levy: &LevyParams) -> Result<Vec<Vec<f64>>> {
    if !(2..=3).contains(&dims) {
        return Err(CsmaError::InvalidInput(format!(
            "walk dimension must be 2 or 3, got {dims}"
        )));
    }
    let mut rng = RngStream::for_slot(seed, StreamDomain::Walk, 0, 0);
    let mut pos = vec![0.0; dims];
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let step = match kind {
            WalkKind::Brownian => brownian_step(&mut rng, dims),
            WalkKind::Levy => levy_step(&mut rng, dims, levy),
        };
        for (p, s) in pos.iter_mut().zip(&step) {
            *p += s;
        }
        out.push(pos.clone());
    }
    Ok(out)
}

/// CSV with header `step_index,x,y[,z]`, one row per step, indices from 1.
pub fn write_walk_csv<W: Write>(mut w: W, walk: &[Vec<f64>]) -> std::io::Result<()> {
    let dims = walk.first().map_or(2, Vec::len);
    let axes = ["x", "y", "z"];
    writeln!(w, "step_index,{}", axes[..dims].join(","))?;
    for (i, p) in walk.iter().enumerate() {
        write!(w, "{}", i + 1)?;
        for v in p {
            write!(w, ",{v:e}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Largest Euclidean distance between consecutive walk positions.
pub fn max_step_length(walk: &[Vec<f64>]) -> f64 {
    let origin = walk.first().map(|p| vec![0.0; p.len()]).unwrap_or_default();
    std::iter::once(&origin)
        .chain(walk.iter())
        .zip(walk.iter())
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (y - x) * (y - x)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}
