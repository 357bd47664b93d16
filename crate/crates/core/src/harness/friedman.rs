//! Friedman mean-rank test.
//!
//! Rows are blocks, columns are treatments. Within each block the lowest
//! value gets rank 1; tied values share the average of the ranks they span.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{CsmaError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub mean_ranks: Vec<f64>,
    pub chi_square: f64,
    pub p_value: f64,
    pub blocks: usize,
    pub treatments: usize,
}

/// Ascending ranks of `values`, averaging ties.
pub fn rank_block(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let shared = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = shared;
        }
        start = end;
    }
    ranks
}

fn check_matrix(results: &[Vec<f64>]) -> Result<usize> {
    let n = results.len();
    if n < 2 {
        return Err(CsmaError::InvalidInput(format!(
            "friedman test needs at least 2 blocks, got {n}"
        )));
    }
    let k = results[0].len();
    if k < 2 {
        return Err(CsmaError::InvalidInput(format!(
            "friedman test needs at least 2 treatments, got {k}"
        )));
    }
    for (i, row) in results.iter().enumerate() {
        if row.len() != k {
            return Err(CsmaError::InvalidInput(format!(
                "block {i} has {} treatments, expected {k}",
                row.len()
            )));
        }
        if row.iter().any(|v| v.is_nan()) {
            return Err(CsmaError::InvalidInput(format!("block {i} contains NaN")));
        }
    }
    Ok(k)
}

fn statistic(rank_sums: &[f64], n: usize) -> f64 {
    let k = rank_sums.len() as f64;
    let n = n as f64;
    let centre = (k + 1.0) / 2.0;
    let ss: f64 = rank_sums.iter().map(|s| (s / n - centre).powi(2)).sum();
    12.0 * n / (k * (k + 1.0)) * ss
}

pub fn friedman_test(results: &[Vec<f64>]) -> Result<FriedmanResult> {
    let k = check_matrix(results)?;
    let n = results.len();
    let mut sums = vec![0.0; k];
    for row in results {
        for (s, r) in sums.iter_mut().zip(rank_block(row)) {
            *s += r;
        }
    }
    let chi_square = statistic(&sums, n);
    let dist = ChiSquared::new((k - 1) as f64).expect("k >= 2 gives positive degrees of freedom");
    let p_value = dist.sf(chi_square).clamp(0.0, 1.0);
    Ok(FriedmanResult {
        mean_ranks: sums.iter().map(|s| s / n as f64).collect(),
        chi_square,
        p_value,
        blocks: n,
        treatments: k,
    })
}

/// Largest `n·k` accepted by [`friedman_exact_p_value`].
pub const EXACT_MAX_CELLS: usize = 20;

/// Permutation p-value: the share of within-block rank permutations whose
/// statistic is at least the observed one. The first block is held fixed,
/// which leaves the statistic's distribution unchanged.
pub fn friedman_exact_p_value(results: &[Vec<f64>]) -> Result<f64> {
    let k = check_matrix(results)?;
    let n = results.len();
    if n * k > EXACT_MAX_CELLS {
        return Err(CsmaError::InvalidInput(format!(
            "exact friedman p-value limited to n*k <= {EXACT_MAX_CELLS}, got {}",
            n * k
        )));
    }
    let ranks: Vec<Vec<f64>> = results.iter().map(|r| rank_block(r)).collect();
    let mut sums = vec![0.0; k];
    for r in &ranks {
        for (s, v) in sums.iter_mut().zip(r) {
            *s += v;
        }
    }
    let observed = statistic(&sums, n);

    let perms: Vec<Vec<Vec<f64>>> = ranks[1..].iter().map(|r| permutations(r)).collect();
    let mut acc = ranks[0].clone();
    let (mut hits, mut total) = (0u64, 0u64);
    enumerate(&perms, 0, &mut acc, &mut |s| {
        total += 1;
        if statistic(s, n) >= observed - 1e-9 {
            hits += 1;
        }
    });
    Ok(hits as f64 / total as f64)
}

fn enumerate(perms: &[Vec<Vec<f64>>], depth: usize, acc: &mut Vec<f64>, visit: &mut impl FnMut(&[f64])) {
    if depth == perms.len() {
        visit(acc);
        return;
    }
    for p in &perms[depth] {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
        enumerate(perms, depth + 1, acc, visit);
        for (a, v) in acc.iter_mut().zip(p) {
            *a -= v;
        }
    }
}

/// All `k!` orderings of `v` (Heap's algorithm), duplicates included.
fn permutations(v: &[f64]) -> Vec<Vec<f64>> {
    let mut a = v.to_vec();
    let mut c = vec![0usize; a.len()];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < a.len() {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
