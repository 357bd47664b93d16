use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random_search::random_search;
use crate::benchmarks::{get_function_with_noise, BenchmarkId};
use crate::error::{CsmaError, Result};
use crate::optimizer::{optimize, RunConfig, RunResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerKind {
    Csma,
    RandomSearch,
}

impl OptimizerKind {
    pub fn run(self, problem: &crate::Problem, config: &RunConfig) -> Result<RunResult> {
        match self {
            OptimizerKind::Csma => optimize(problem, config),
            OptimizerKind::RandomSearch => random_search(problem, config),
        }
    }
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimizerKind::Csma => "csma",
            OptimizerKind::RandomSearch => "random-search",
        })
    }
}

impl FromStr for OptimizerKind {
    type Err = CsmaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csma" => Ok(OptimizerKind::Csma),
            "random" | "random-search" | "random_search" => Ok(OptimizerKind::RandomSearch),
            other => Err(CsmaError::InvalidInput(format!("unknown optimizer `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatchConfig {
    pub function_ids: Vec<BenchmarkId>,
    pub runs: usize,
    pub base_seed: u64,
    pub run_config: RunConfig,
    pub optimizers: Vec<OptimizerKind>,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            function_ids: BenchmarkId::all().collect(),
            runs: 20,
            base_seed: 0,
            run_config: RunConfig::default(),
            optimizers: vec![OptimizerKind::Csma],
        }
    }
}

impl BatchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs < 2 {
            return Err(CsmaError::InvalidConfig(format!(
                "runs must be at least 2, got {}",
                self.runs
            )));
        }
        if self.function_ids.is_empty() || self.optimizers.is_empty() {
            return Err(CsmaError::InvalidConfig(
                "batch needs at least one function and one optimizer".into(),
            ));
        }
        self.run_config.validate()
    }

    /// Seed of run `run` is `base_seed + run`.
    pub fn run_seed(&self, run: usize) -> u64 {
        self.base_seed.wrapping_add(run as u64)
    }
}

/// Summary of one (function, optimizer) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub function_id: BenchmarkId,
    pub optimizer: OptimizerKind,
    pub average: f64,
    pub std: f64,
    pub per_run: Vec<f64>,
}

impl StatsRow {
    pub fn from_runs(function_id: BenchmarkId, optimizer: OptimizerKind, per_run: Vec<f64>) -> Self {
        let (average, std) = mean_and_sample_std(&per_run);
        Self {
            function_id,
            optimizer,
            average,
            std,
            per_run,
        }
    }

    pub fn median(&self) -> f64 {
        median(&self.per_run)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsTable {
    pub runs: usize,
    pub rows: Vec<StatsRow>,
}

impl StatsTable {
    pub fn row(&self, function_id: BenchmarkId, optimizer: OptimizerKind) -> Option<&StatsRow> {
        self.rows
            .iter()
            .find(|r| r.function_id == function_id && r.optimizer == optimizer)
    }

    /// Optimizers in first-appearance order.
    pub fn optimizers(&self) -> Vec<OptimizerKind> {
        let mut out = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.optimizer) {
                out.push(r.optimizer);
            }
        }
        out
    }

    pub fn function_ids(&self) -> Vec<BenchmarkId> {
        let mut out = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.function_id) {
                out.push(r.function_id);
            }
        }
        out
    }

    /// Checks that every stored average/std matches its per-run vector.
    pub fn verify(&self) -> Result<()> {
        for r in &self.rows {
            let (avg, std) = mean_and_sample_std(&r.per_run);
            if !close(avg, r.average) || !close(std, r.std) {
                return Err(CsmaError::InvalidInput(format!(
                    "stored statistics for {} / {} do not match per-run values",
                    r.function_id, r.optimizer
                )));
            }
        }
        Ok(())
    }

    /// Appends rows from `other`, keeping the first occurrence of duplicates.
    pub fn merge(&mut self, other: StatsTable) -> Result<()> {
        if !self.rows.is_empty() && !other.rows.is_empty() && self.runs != other.runs {
            return Err(CsmaError::InvalidInput(format!(
                "cannot merge tables with {} and {} runs",
                self.runs, other.runs
            )));
        }
        if self.rows.is_empty() {
            self.runs = other.runs;
        }
        for row in other.rows {
            if self.row(row.function_id, row.optimizer).is_none() {
                self.rows.push(row);
            }
        }
        Ok(())
    }
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Mean and `n − 1` standard deviation.
pub fn mean_and_sample_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => v[n / 2],
        _ => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}

/// One finished run inside a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub function_id: BenchmarkId,
    pub optimizer: OptimizerKind,
    pub run: usize,
    pub result: RunResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchOutcome {
    pub table: StatsTable,
    /// Ordered by (function, optimizer, run) as listed in the config.
    pub records: Vec<RunRecord>,
}

/// Runs every (function, optimizer, run) triple, in parallel on the current
/// rayon pool. Output order, and therefore every byte of the aggregate,
/// is independent of scheduling.
pub fn run_batch_detailed(config: &BatchConfig) -> Result<BatchOutcome> {
    config.validate()?;
    let jobs: Vec<(BenchmarkId, OptimizerKind, usize)> = config
        .function_ids
        .iter()
        .flat_map(|&f| {
            config
                .optimizers
                .iter()
                .flat_map(move |&o| (0..config.runs).map(move |r| (f, o, r)))
        })
        .collect();

    let records = jobs
        .par_iter()
        .map(|&(function_id, optimizer, run)| {
            let seed = config.run_seed(run);
            let problem = get_function_with_noise(function_id, seed);
            let run_config = RunConfig {
                seed,
                ..config.run_config.clone()
            };
            optimizer
                .run(&problem, &run_config)
                .map(|result| RunRecord {
                    function_id,
                    optimizer,
                    run,
                    result,
                })
                .map_err(|e| CsmaError::RunFailed {
                    function: function_id.to_string(),
                    optimizer: optimizer.to_string(),
                    run,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = records
        .chunks(config.runs)
        .map(|chunk| {
            let per_run = chunk.iter().map(|r| r.result.best_fitness).collect();
            StatsRow::from_runs(chunk[0].function_id, chunk[0].optimizer, per_run)
        })
        .collect();

    Ok(BatchOutcome {
        table: StatsTable {
            runs: config.runs,
            rows,
        },
        records,
    })
}

pub fn run_batch(config: &BatchConfig) -> Result<StatsTable> {
    run_batch_detailed(config).map(|o| o.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sample_std_hand_values() {
        let (m, s) = mean_and_sample_std(&[1.0, 3.0]);
        assert_eq!(m, 2.0);
        assert_relative_eq!(s, std::f64::consts::SQRT_2, max_relative = 1e-15);
        assert_eq!(mean_and_sample_std(&[4.0, 4.0]), (4.0, 0.0));
    }

    #[test]
    fn median_values() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn optimizer_names() {
        assert_eq!("random".parse::<OptimizerKind>().unwrap(), OptimizerKind::RandomSearch);
        assert_eq!("CSMA".parse::<OptimizerKind>().unwrap(), OptimizerKind::Csma);
        assert!("woa".parse::<OptimizerKind>().is_err());
        assert_eq!(OptimizerKind::RandomSearch.to_string(), "random-search");
    }

    #[test]
    fn batch_validation() {
        let c = BatchConfig {
            runs: 1,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = BatchConfig {
            optimizers: vec![],
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_batch_shape() {
        let config = BatchConfig {
            function_ids: vec!["F1".parse().unwrap(), "F16".parse().unwrap()],
            runs: 3,
            base_seed: 10,
            run_config: RunConfig {
                pop_size: 5,
                max_iters: 10,
                ..Default::default()
            },
            optimizers: vec![OptimizerKind::Csma, OptimizerKind::RandomSearch],
        };
        let out = run_batch_detailed(&config).unwrap();
        assert_eq!(out.table.rows.len(), 4);
        assert_eq!(out.records.len(), 12);
        assert_eq!(out.records[4].run, 1);
        assert_eq!(out.records[4].optimizer, OptimizerKind::RandomSearch);
        out.table.verify().unwrap();
        let again = run_batch(&config).unwrap();
        assert_eq!(again, out.table);
    }

    #[test]
    fn verify_detects_tampering() {
        let mut t = StatsTable {
            runs: 2,
            rows: vec![StatsRow::from_runs(
                "F1".parse().unwrap(),
                OptimizerKind::Csma,
                vec![1.0, 3.0],
            )],
        };
        t.verify().unwrap();
        t.rows[0].average = 2.5;
        assert!(t.verify().is_err());
    }
}
