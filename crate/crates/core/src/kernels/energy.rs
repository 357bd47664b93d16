//! Population-energy schedule and the scheduled control parameters.

use serde::{Deserialize, Serialize};

use super::rng::RngStream;
use crate::error::{CsmaError, Result};

fn check_schedule(t: u64, max_iters: u64) -> Result<()> {
    if max_iters == 0 {
        return Err(CsmaError::InvalidConfig("max iterations must be at least 1".into()));
    }
    if t > max_iters {
        return Err(CsmaError::InvalidConfig(format!(
            "iteration {t} exceeds max iterations {max_iters}"
        )));
    }
    Ok(())
}

/// Exploration energy `(2t²/T²)^(1 − t/T)`.
///
/// Rises from 0 at `t = 0` to exactly 1 at `t = T`. Defined on the whole
/// schedule, since the migrating stage reads it after the exploration window.
pub fn energy_e1(t: u64, max_iters: u64) -> Result<f64> {
    check_schedule(t, max_iters)?;
    let (t, big_t) = (t as f64, max_iters as f64);
    let base = 2.0 * t * t / (big_t * big_t);
    let exponent = (big_t - t) / big_t;
    Ok(base.powf(exponent))
}

/// Exploitation energy `(1 − 3(t − 0.7T)/T)^(30(t − 0.7T)/T)`.
///
/// Equals 1 at `t = 0.7T` and decays to `1e-9` at `t = T`. The base
/// `(31T − 30t) / 10T` is evaluated from integers so the endpoints are
/// correctly rounded.
pub fn energy_e2(t: u64, max_iters: u64) -> Result<f64> {
    check_schedule(t, max_iters)?;
    let (t, big_t) = (t as i128, max_iters as i128);
    let base = (31 * big_t - 30 * t) as f64 / (10 * big_t) as f64;
    let exponent = (3 * (10 * t - 7 * big_t)) as f64 / big_t as f64;
    Ok(base.powf(exponent))
}

/// Linear decay `1 − t/T` used by the migrating stage.
pub fn control_b(t: u64, max_iters: u64) -> f64 {
    debug_assert!(max_iters >= 1);
    (max_iters - t.min(max_iters)) as f64 / max_iters as f64
}

/// `2u − 1` for a uniform `u`, giving a value in `[−1, 1)`.
pub fn control_c(rng: &mut RngStream) -> f64 {
    control_c_from_uniform(rng.uniform())
}

pub fn control_c_from_uniform(u: f64) -> f64 {
    2.0 * u - 1.0
}

/// Uniform draw on `[−1, 1]`.
pub fn control_d(rng: &mut RngStream) -> f64 {
    use rand::Rng;
    rng.random_range(-1.0..=1.0)
}

/// Scheduled scalars for one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyState {
    pub t: u64,
    pub max_iters: u64,
    pub e1: f64,
    pub e2: f64,
    pub b: f64,
}

impl EnergyState {
    pub fn at(t: u64, max_iters: u64) -> Result<Self> {
        Ok(Self {
            t,
            max_iters,
            e1: energy_e1(t, max_iters)?,
            e2: energy_e2(t, max_iters)?,
            b: control_b(t, max_iters),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn e1_examples() {
        assert_eq!(energy_e1(0, 100).unwrap(), 0.0);
        assert_eq!(energy_e1(100, 100).unwrap(), 1.0);
        assert_relative_eq!(
            energy_e1(50, 100).unwrap(),
            0.707_106_781_186_547_5,
            max_relative = 1e-15
        );
    }

    #[test]
    fn e2_examples() {
        assert_eq!(energy_e2(70, 100).unwrap(), 1.0);
        assert_relative_eq!(energy_e2(100, 100).unwrap(), 1.0e-9, max_relative = 1e-12);
        // (1.1)^(-1) at t = 2T/3
        assert_relative_eq!(energy_e2(2, 3).unwrap(), 1.0 / 1.1, max_relative = 1e-12);
        assert_relative_eq!(energy_e2(200, 300).unwrap(), 1.0 / 1.1, max_relative = 1e-12);
    }

    #[test]
    fn zero_horizon_is_rejected() {
        assert!(matches!(energy_e1(0, 0), Err(CsmaError::InvalidConfig(_))));
        assert!(matches!(energy_e2(0, 0), Err(CsmaError::InvalidConfig(_))));
        assert!(energy_e1(11, 10).is_err());
    }

    #[test]
    fn b_examples() {
        assert_eq!(control_b(100, 100), 0.0);
        assert_eq!(control_b(1, 100), 0.99);
        assert_eq!(control_b(50, 100), 0.5);
    }

    #[test]
    fn c_examples() {
        assert_eq!(control_c_from_uniform(0.0), -1.0);
        assert_eq!(control_c_from_uniform(0.5), 0.0);
    }

    #[test]
    fn e1_below_one_in_exploration_window() {
        for big_t in [3u64, 10, 99, 500] {
            for t in 0..=(2 * big_t / 3) {
                let e = energy_e1(t, big_t).unwrap();
                assert!((0.0..1.0).contains(&e), "t={t} T={big_t} e1={e}");
            }
        }
    }

    #[test]
    fn e2_bounded_in_exploitation_window() {
        for big_t in [3u64, 10, 99, 500] {
            for t in (2 * big_t / 3 + 1)..=big_t {
                let e = energy_e2(t, big_t).unwrap();
                assert!(e > 0.0 && e <= 1.1, "t={t} T={big_t} e2={e}");
            }
        }
    }

    #[test]
    fn state_bundles_schedule() {
        let s = EnergyState::at(50, 100).unwrap();
        assert_eq!(s.b, 0.5);
        assert_eq!(s.e1, energy_e1(50, 100).unwrap());
        assert_eq!(s.e2, energy_e2(50, 100).unwrap());
    }
}
