//! Textbook statistics used as independent references: moment estimators,
//! the one-sample KS statistic against N(0, 1), and Friedman ranks computed
//! by counting. Shared by the core integration tests and the acceptance suite.

#![allow(dead_code)]

use csma_core::kernels::RngStream;
use statrs::distribution::{ContinuousCDF, Normal};

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64
}

pub fn kurtosis(v: &[f64]) -> f64 {
    let m = mean(v);
    let m2 = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64;
    let m4 = v.iter().map(|x| (x - m).powi(4)).sum::<f64>() / v.len() as f64;
    m4 / (m2 * m2)
}

pub fn median_abs(v: &[f64]) -> f64 {
    let mut a: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    a.sort_by(f64::total_cmp);
    a[a.len() / 2]
}

pub fn quantile(v: &mut [f64], q: f64) -> f64 {
    v.sort_by(f64::total_cmp);
    v[((v.len() as f64 - 1.0) * q).round() as usize]
}

/// KS distance of `x` from the standard normal, and the asymptotic critical
/// value at significance 0.001.
pub fn ks_standard_normal(x: &[f64]) -> (f64, f64) {
    let mut x = x.to_vec();
    x.sort_by(f64::total_cmp);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let n = x.len() as f64;
    let d = x
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let f = normal.cdf(*v);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max);
    let critical = (-(0.001f64 / 2.0).ln() / 2.0).sqrt() / n.sqrt();
    (d, critical)
}

/// Rank by counting: 1 + (#smaller) + (#equal others)/2.
pub fn brute_force_mean_ranks(m: &[Vec<f64>]) -> Vec<f64> {
    let k = m[0].len();
    let mut sums = vec![0.0; k];
    for row in m {
        for i in 0..k {
            let smaller = row.iter().filter(|v| **v < row[i]).count() as f64;
            let equal = row.iter().filter(|v| **v == row[i]).count() as f64 - 1.0;
            sums[i] += 1.0 + smaller + equal / 2.0;
        }
    }
    sums.iter().map(|s| s / m.len() as f64).collect()
}

pub fn brute_force_chi_square(ranks: &[f64], n: usize) -> f64 {
    let k = ranks.len() as f64;
    let n = n as f64;
    12.0 * n / (k * (k + 1.0)) * ranks.iter().map(|r| (r - (k + 1.0) / 2.0).powi(2)).sum::<f64>()
}

/// Random n×k matrix with n, k ∈ [2, 6] and few distinct values, so ties are
/// common.
pub fn random_matrix(seed: u64) -> Vec<Vec<f64>> {
    let mut g = RngStream::new(seed);
    let n = 2 + g.index(5);
    let k = 2 + g.index(5);
    (0..n).map(|_| (0..k).map(|_| g.index(4) as f64).collect()).collect()
}
