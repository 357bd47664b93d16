//! Repeated-run experiments: batches of seeded runs, mean/STD tables, the
//! Friedman rank test, a random-search baseline and result export.

mod batch;
mod export;
mod friedman;
mod random_search;

pub use batch::{
    mean_and_sample_std, median, run_batch, run_batch_detailed, BatchConfig, BatchOutcome, OptimizerKind, RunRecord,
    StatsRow, StatsTable,
};
pub use export::{
    export_friedman, export_stats, export_trace, format_sci, read_stats_json, write_friedman_csv, write_stats_csv,
    write_trace_csv, ExportFormat,
};
pub use friedman::{friedman_exact_p_value, friedman_test, rank_block, FriedmanResult, EXACT_MAX_CELLS};
pub use random_search::{random_search, random_search_budget};

use crate::benchmarks::BenchmarkId;
use crate::error::{CsmaError, Result};

/// Result matrix for comparing `optimizers` on one function: one block per
/// run, one column per optimizer.
pub fn per_function_matrix(
    table: &StatsTable,
    function_id: BenchmarkId,
    optimizers: &[OptimizerKind],
) -> Result<Vec<Vec<f64>>> {
    pooled_matrix(table, &[function_id], optimizers)
}

/// Result matrix pooling several functions: one block per (function, run)
/// pair, one column per optimizer.
pub fn pooled_matrix(
    table: &StatsTable,
    function_ids: &[BenchmarkId],
    optimizers: &[OptimizerKind],
) -> Result<Vec<Vec<f64>>> {
    let mut blocks = Vec::new();
    for &f in function_ids {
        let rows = optimizers
            .iter()
            .map(|&o| {
                table
                    .row(f, o)
                    .ok_or_else(|| CsmaError::InvalidInput(format!("no results for {f} / {o}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let runs = rows[0].per_run.len();
        if rows.iter().any(|r| r.per_run.len() != runs) {
            return Err(CsmaError::InvalidInput(format!("run counts differ for {f}")));
        }
        for run in 0..runs {
            blocks.push(rows.iter().map(|r| r.per_run[run]).collect());
        }
    }
    Ok(blocks)
}
