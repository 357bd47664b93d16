//! Calico salmon migration optimizer (CSMA) for box-constrained black-box
//! minimization, with the classical 23-function benchmark suite and a
//! repeated-run experiment harness.

pub mod benchmarks;
pub mod error;
pub mod harness;
pub mod kernels;
pub mod optimizer;

pub use error::{CsmaError, Result};
pub use optimizer::{optimize, Problem, RunConfig, RunResult};
