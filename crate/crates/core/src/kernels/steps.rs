//! Brownian and Lévy-flight step generators.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::rng::RngStream;
use crate::error::{CsmaError, Result};

/// `d` independent standard-normal samples.
pub fn brownian_step(rng: &mut RngStream, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.standard_normal()).collect()
}

/// Standard deviation of the numerator Gaussian in Mantegna's construction:
///
/// `[Γ(1+α)·sin(πα/2) / (Γ((1+α)/2)·α·2^((α−1)/2))]^(1/α)`
pub fn levy_sigma_m(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(CsmaError::InvalidParameter(format!(
            "levy stability index must lie in (0, 2], got {alpha}"
        )));
    }
    let num = gamma(1.0 + alpha) * (PI * alpha / 2.0).sin();
    let den = gamma((1.0 + alpha) / 2.0) * alpha * 2f64.powf((alpha - 1.0) / 2.0);
    Ok((num / den).powf(1.0 / alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LevyParamsRepr", into = "LevyParamsRepr")]
pub struct LevyParams {
    alpha: f64,
    scale: f64,
    sigma_m: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevyParamsRepr {
    alpha: f64,
    scale: f64,
}

impl TryFrom<LevyParamsRepr> for LevyParams {
    type Error = CsmaError;

    fn try_from(r: LevyParamsRepr) -> Result<Self> {
        LevyParams::new(r.alpha, r.scale)
    }
}

impl From<LevyParams> for LevyParamsRepr {
    fn from(p: LevyParams) -> Self {
        LevyParamsRepr {
            alpha: p.alpha,
            scale: p.scale,
        }
    }
}

impl LevyParams {
    pub fn new(alpha: f64, scale: f64) -> Result<Self> {
        let sigma_m = levy_sigma_m(alpha)?;
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(CsmaError::InvalidParameter(format!(
                "levy scale must be positive, got {scale}"
            )));
        }
        Ok(Self { alpha, scale, sigma_m })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn sigma_m(&self) -> f64 {
        self.sigma_m
    }
}

impl Default for LevyParams {
    /// α = 1.5, s = 0.01.
    fn default() -> Self {
        Self::new(1.5, 0.01).expect("default levy parameters are valid")
    }
}

/// `d` Lévy-flight components `s·m / |n|^(1/α)`, `m ~ N(0, σ_m²)`, `n ~ N(0, 1)`.
///
/// Draws alternate `m, n` per component; an `n` of exactly zero is redrawn.
pub fn levy_step(rng: &mut RngStream, d: usize, params: &LevyParams) -> Vec<f64> {
    let inv_alpha = 1.0 / params.alpha;
    (0..d)
        .map(|_| {
            let m = params.sigma_m * rng.standard_normal();
            let mut n = rng.standard_normal();
            while n == 0.0 {
                n = rng.standard_normal();
            }
            params.scale * m / n.abs().powf(inv_alpha)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sigma_m_reference_values() {
        // mpmath, 40 digits
        assert_relative_eq!(
            levy_sigma_m(1.5).unwrap(),
            0.696_574_502_557_696_8,
            max_relative = 1e-12
        );
        assert_relative_eq!(levy_sigma_m(1.0).unwrap(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            levy_sigma_m(0.5).unwrap(),
            1.479_337_559_594_319_4,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            levy_sigma_m(1.9).unwrap(),
            0.333_818_830_691_288_6,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sigma_m_out_of_range() {
        for a in [2.1, 0.0, -1.0, f64::NAN] {
            assert!(matches!(levy_sigma_m(a), Err(CsmaError::InvalidParameter(_))));
        }
        assert!(levy_sigma_m(2.0).unwrap() > 0.0);
    }

    #[test]
    fn params_validation() {
        assert!(LevyParams::new(1.5, 0.0).is_err());
        assert!(LevyParams::new(2.5, 0.01).is_err());
        let p = LevyParams::default();
        assert_eq!(p.alpha(), 1.5);
        assert_eq!(p.scale(), 0.01);
        assert_eq!(p.sigma_m(), levy_sigma_m(1.5).unwrap());
    }

    #[test]
    fn params_json_roundtrip_rederives_sigma() {
        let p = LevyParams::new(1.2, 0.5).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"alpha":1.2,"scale":0.5}"#);
        let q: LevyParams = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<LevyParams>(r#"{"alpha":3.0,"scale":0.5}"#).is_err());
    }

    #[test]
    fn steps_have_requested_length_and_are_deterministic() {
        let p = LevyParams::default();
        let mut a = RngStream::new(9);
        let mut b = RngStream::new(9);
        let x = levy_step(&mut a, 7, &p);
        assert_eq!(x.len(), 7);
        assert_eq!(x, levy_step(&mut b, 7, &p));
        assert_eq!(brownian_step(&mut a, 3), brownian_step(&mut b, 3));
    }
}
