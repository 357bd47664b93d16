//! Config-file loading and flag precedence: defaults < file < flags.

use std::path::Path;

use csma_core::benchmarks::BenchmarkId;
use csma_core::harness::{BatchConfig, OptimizerKind};
use csma_core::kernels::LevyParams;
use csma_core::optimizer::BoundaryPolicy;
use csma_core::RunConfig;
use serde::Deserialize;

use crate::CliError;

/// Keys accepted in a `--config` file. They mirror the `RunConfig` and
/// `BatchConfig` field names; anything else is rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub pop_size: Option<usize>,
    pub max_iters: Option<u64>,
    pub seed: Option<u64>,
    pub p_stage1: Option<f64>,
    pub p_stage3: Option<f64>,
    pub boundary_policy: Option<BoundaryPolicy>,
    pub a: Option<f64>,
    pub levy: Option<LevyParams>,
    pub function_ids: Option<Vec<BenchmarkId>>,
    pub runs: Option<usize>,
    pub base_seed: Option<u64>,
    pub optimizers: Option<Vec<OptimizerKind>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Runtime(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Run settings from the file over the library defaults.
    pub fn run_config(&self) -> RunConfig {
        let mut c = RunConfig::default();
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = self.$f.clone() { c.$f = v; } )* };
        }
        take!(pop_size, max_iters, seed, p_stage1, p_stage3, boundary_policy, a, levy);
        c
    }

    /// Batch settings from the file over the library defaults. A bare `seed`
    /// stands in for `base_seed` when the latter is absent.
    pub fn batch_config(&self) -> BatchConfig {
        let mut b = BatchConfig {
            run_config: self.run_config(),
            ..BatchConfig::default()
        };
        if let Some(f) = &self.function_ids {
            b.function_ids = f.clone();
        }
        if let Some(r) = self.runs {
            b.runs = r;
        }
        if let Some(o) = &self.optimizers {
            b.optimizers = o.clone();
        }
        b.base_seed = self.base_seed.or(self.seed).unwrap_or(b.base_seed);
        b
    }
}

/// Overrides coming from command-line flags; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct RunOverrides {
    pub pop_size: Option<usize>,
    pub max_iters: Option<u64>,
    pub seed: Option<u64>,
}

impl RunOverrides {
    pub fn apply(&self, c: &mut RunConfig) {
        if let Some(v) = self.pop_size {
            c.pop_size = v;
        }
        if let Some(v) = self.max_iters {
            c.max_iters = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
    }
}
