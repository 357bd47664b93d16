//! Statistical properties of the stochastic kernels.

use csma_core::kernels::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[path = "common/stat_oracle.rs"]
mod stat_oracle;

use stat_oracle::*;

const MILLION: usize = 1_000_000;

#[test]
fn brownian_moments_and_tail() {
    let mut rng = RngStream::new(2024);
    let x = brownian_step(&mut rng, MILLION);
    assert!(mean(&x).abs() < 0.01, "mean {}", mean(&x));
    assert!((variance(&x) - 1.0).abs() < 0.02, "var {}", variance(&x));
    let tail = x.iter().filter(|v| v.abs() > 1.96).count() as f64 / MILLION as f64;
    assert!((tail - 0.05).abs() < 0.005, "tail {tail}");
}

#[test]
fn brownian_passes_ks_test() {
    let mut rng = RngStream::new(77);
    let x = brownian_step(&mut rng, 100_000);
    let (d, critical) = ks_standard_normal(&x);
    assert!(d < critical, "KS D={d} critical={critical}");
}

/// Mantegna sampler written from scratch on an unrelated generator.
fn oracle_levy(rng: &mut StdRng, count: usize) -> Vec<f64> {
    const SIGMA_M: f64 = 0.696_574_502_557_696_8;
    let mut gauss = || {
        // Box-Muller
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random::<f64>();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    (0..count)
        .map(|_| {
            let m = SIGMA_M * gauss();
            let n = gauss();
            0.01 * m / n.abs().powf(1.0 / 1.5)
        })
        .collect()
}

#[test]
fn levy_median_matches_independent_oracle() {
    let params = LevyParams::default();
    let mut rng = RngStream::new(5);
    let x = levy_step(&mut rng, MILLION, &params);
    let y = oracle_levy(&mut StdRng::seed_from_u64(99), MILLION);
    let (mx, my) = (median_abs(&x), median_abs(&y));
    assert!((mx / my - 1.0).abs() < 0.02, "median {mx} vs oracle {my}");
}

#[test]
fn levy_sign_symmetry() {
    let mut rng = RngStream::new(6);
    let x = levy_step(&mut rng, MILLION, &LevyParams::default());
    let pos = x.iter().filter(|v| **v > 0.0).count() as f64 / MILLION as f64;
    assert!((pos - 0.5).abs() < 0.005, "positive fraction {pos}");
}

#[test]
fn levy_tails_dominate_brownian() {
    let params = LevyParams::default();
    let mut rng = RngStream::new(8);
    let levy = levy_step(&mut rng, MILLION, &params);
    let gauss = brownian_step(&mut rng, MILLION);
    let scale = median_abs(&levy) / median_abs(&gauss);
    let mut scaled: Vec<f64> = gauss.iter().map(|g| (g * scale).abs()).collect();
    let q99 = quantile(&mut scaled, 0.99);
    let gauss_tail = scaled.iter().filter(|v| **v > q99).count() as f64 / MILLION as f64;
    let levy_tail = levy.iter().filter(|v| v.abs() > q99).count() as f64 / MILLION as f64;
    assert!(levy_tail > gauss_tail, "levy tail {levy_tail} vs gaussian {gauss_tail}");
}

#[test]
fn levy_kurtosis_ratio_exceeds_ten() {
    let mut rng = RngStream::new(10);
    let levy = levy_step(&mut rng, MILLION, &LevyParams::default());
    let gauss = brownian_step(&mut rng, MILLION);
    let ratio = kurtosis(&levy) / kurtosis(&gauss);
    assert!(ratio > 10.0, "kurtosis ratio {ratio}");
}

#[test]
fn control_c_moments() {
    let mut rng = RngStream::new(11);
    let c: Vec<f64> = (0..MILLION).map(|_| control_c(&mut rng)).collect();
    assert!(c.iter().all(|v| (-1.0..1.0).contains(v)));
    assert!(mean(&c).abs() < 0.01);
}

#[test]
fn control_d_moments() {
    let mut rng = RngStream::new(12);
    let d: Vec<f64> = (0..MILLION).map(|_| control_d(&mut rng)).collect();
    assert!(d.iter().all(|v| (-1.0..=1.0).contains(v)));
    assert!(mean(&d).abs() < 0.01);
    assert!((variance(&d) - 1.0 / 3.0).abs() < 0.01, "var {}", variance(&d));
}

#[test]
fn every_kernel_is_seed_deterministic() {
    let p = LevyParams::default();
    let run = |seed| {
        let mut r = RngStream::for_slot(seed, StreamDomain::Step, 3, 1);
        let mut out = brownian_step(&mut r, 4);
        out.extend(levy_step(&mut r, 4, &p));
        out.push(control_c(&mut r));
        out.push(control_d(&mut r));
        out
    };
    assert_eq!(run(1), run(1));
    assert_ne!(run(1), run(2));
}
