//! Univalence radius `r₀`, covered radius `R₀` and bi-Lipschitz constants.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bounds::{gg_deriv_deviation_bound, pf_deriv_deviation_bound};
use crate::error::{Error, Result};

pub const BRACKET_EPS: f64 = 1e-12;
pub const DEFAULT_RHO_FRACTION: f64 = 0.9;
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandauParameters {
    #[serde(rename = "M1")]
    pub m1: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
}

impl LandauParameters {
    pub fn new(m1: f64, m2: f64) -> Result<Self> {
        if !(m1.is_finite() && m1 >= 0.0) {
            return Err(Error::InvalidParameter(format!("M1 must be finite and >= 0, got {m1}")));
        }
        if !(m2.is_finite() && m2 > 0.0) {
            return Err(Error::InvalidParameter(format!("M2 must be finite and > 0, got {m2}")));
        }
        Ok(LandauParameters { m1, m2 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandauResult {
    pub r0: f64,
    #[serde(rename = "R0")]
    pub big_r0: f64,
    pub phi_residual: f64,
    /// Lower Lipschitz margin at `rho = rho_fraction · r0`.
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L2")]
    pub l2: f64,
    pub rho_fraction: f64,
    pub iterations: usize,
}

/// `1/((4/π)M₂ + (2/3)M₁)`.
pub fn lambda_lower_bound(p: &LandauParameters) -> f64 {
    1.0 / (4.0 / PI * p.m2 + 2.0 / 3.0 * p.m1)
}

/// `λ − (4M₂/π)x(2−x)/(1−x)² − 2M₁[log 4(1+x) − log x](2+x)x`.
pub fn phi(x: f64, p: &LandauParameters) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            name: "phi",
            value: x,
            domain: "(0, 1)",
        });
    }
    Ok(lambda_lower_bound(p) - pf_deriv_deviation_bound(x, p.m2)? - 2.0 * gg_deriv_deviation_bound(x, p.m1)?)
}

pub fn phi_limit_zero(p: &LandauParameters) -> f64 {
    lambda_lower_bound(p)
}

/// `(2M₂/π) r₀²(2 − r₀)/(1 − r₀)²`.
pub fn covered_radius(r0: f64, p: &LandauParameters) -> f64 {
    2.0 * p.m2 / PI * r0 * r0 * (2.0 - r0) / ((1.0 - r0) * (1.0 - r0))
}

/// `(4M₂/π)/(1 − r₀²) + (2/3)M₁`.
pub fn upper_lipschitz(r0: f64, p: &LandauParameters) -> f64 {
    4.0 * p.m2 / PI / (1.0 - r0 * r0) + 2.0 / 3.0 * p.m1
}

/// Lower Lipschitz margin at radius `rho`; equals `phi(rho)` and is positive for `rho < r₀`.
pub fn lower_lipschitz(rho: f64, p: &LandauParameters) -> Result<f64> {
    if rho == 0.0 {
        return Ok(lambda_lower_bound(p));
    }
    phi(rho, p)
}

/// Closed-form root when `M₁ = 0`: `1 − 1/√(1 + π²/(16M₂²))`.
pub fn quadratic_root(m2: f64) -> f64 {
    1.0 - 1.0 / (1.0 + PI * PI / (16.0 * m2 * m2)).sqrt()
}

pub fn landau_radius(p: &LandauParameters, tol: f64) -> Result<LandauResult> {
    landau_radius_at(p, tol, DEFAULT_RHO_FRACTION)
}

/// Bisection for the root of `phi` on `[ε, 1 − ε]`, with `L1` taken at `rho_fraction · r0`.
pub fn landau_radius_at(p: &LandauParameters, tol: f64, rho_fraction: f64) -> Result<LandauResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    if !(rho_fraction > 0.0 && rho_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!("rho fraction must lie in (0, 1), got {rho_fraction}")));
    }
    let (mut lo, mut hi) = (BRACKET_EPS, 1.0 - BRACKET_EPS);
    let (f_lo, f_hi) = (phi(lo, p)?, phi(hi, p)?);
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::BracketFailure { lo, hi });
    }
    let mut iterations = 0;
    let mut mid = 0.5 * (lo + hi);
    let mut f_mid = phi(mid, p)?;
    while iterations < 200 {
        if hi - lo <= tol && f_mid.abs() < RESIDUAL_TOL {
            break;
        }
        if f_mid > 0.0 {
            lo = mid;
        } else if f_mid < 0.0 {
            hi = mid;
        } else {
            break;
        }
        let next = 0.5 * (lo + hi);
        if next == mid {
            break;
        }
        mid = next;
        f_mid = phi(mid, p)?;
        iterations += 1;
    }
    let r0 = mid;
    Ok(LandauResult {
        r0,
        big_r0: covered_radius(r0, p),
        phi_residual: f_mid.abs(),
        l1: lower_lipschitz(rho_fraction * r0, p)?,
        l2: upper_lipschitz(r0, p),
        rho_fraction,
        iterations,
    })
}

/// `τ₁(x) = (2 − r₀x)/(1 − r₀x)²`.
pub fn tau1(x: f64, r0: f64) -> f64 {
    let y = r0 * x;
    (2.0 - y) / ((1.0 - y) * (1.0 - y))
}

/// `τ₂(x) = x[log 4(1 + r₀x) − log(r₀x)]`.
pub fn tau2(x: f64, r0: f64) -> f64 {
    let y = r0 * x;
    x * ((4.0 * (1.0 + y)).ln() - y.ln())
}

/// Both `τ₁` and `τ₂` nondecreasing on the grid `k/1000`, `k = 1..=1000`.
pub fn tau_monotonicity_check(r0: f64) -> bool {
    if !(r0 > 0.0 && r0 < 1.0) {
        return false;
    }
    let grid: Vec<f64> = (1..=1000).map(|k| k as f64 / 1000.0).collect();
    let t1: Vec<f64> = grid.iter().map(|&x| tau1(x, r0)).collect();
    let t2: Vec<f64> = grid.iter().map(|&x| tau2(x, r0)).collect();
    t1.windows(2).all(|w| w[1] >= w[0]) && t2.windows(2).all(|w| w[1] >= w[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(m1: f64, m2: f64) -> LandauParameters {
        LandauParameters::new(m1, m2).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(LandauParameters::new(0.0, 0.0).is_err());
        assert!(LandauParameters::new(-1.0, 1.0).is_err());
        assert!(LandauParameters::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn phi_examples() {
        let p = params(0.0, 1.0);
        assert_abs_diff_eq!(phi(1e-15, &p).unwrap(), PI / 4.0, epsilon = 1e-12);
        assert!(phi(1.0 - 1e-9, &p).unwrap() < -1e15);
        assert!(phi(0.2135609, &p).unwrap().abs() < 1e-6);
        assert!(phi(0.2135599, &p).unwrap() > 1e-6);
        assert!(phi(0.0, &p).is_err() && phi(1.0, &p).is_err());
    }

    #[test]
    fn radius_examples() {
        let r = landau_radius(&params(0.0, 1.0), 1e-12).unwrap();
        assert_abs_diff_eq!(r.r0, 0.213560899904616733, epsilon = 1e-12);
        assert_abs_diff_eq!(r.big_r0, 0.0838651692792961380, epsilon = 1e-11);
        assert!(r.phi_residual < RESIDUAL_TOL);

        let frozen = [
            (0.0, 0.5, 0.462970727853684923, 0.363616359363064005),
            (0.0, 2.0, 0.0691984445012999965, 0.0135870828053203183),
            (1.0, 1.0, 0.0216389635783722179, 0.000616112880112396868),
        ];
        for (m1, m2, r0, big) in frozen {
            let r = landau_radius(&params(m1, m2), 1e-13).unwrap();
            assert_abs_diff_eq!(r.r0, r0, epsilon = 1e-12);
            assert_abs_diff_eq!(r.big_r0, big, epsilon = 1e-11);
        }
    }

    #[test]
    fn quadratic_oracle_for_harmonic_case() {
        for m2 in [0.5, 1.0, 2.0] {
            let r = landau_radius(&params(0.0, m2), 1e-13).unwrap();
            assert!((r.r0 - quadratic_root(m2)).abs() < 1e-10);
        }
    }

    #[test]
    fn radius_shrinks_with_m2() {
        let radii: Vec<f64> = [1.0, 2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&m2| landau_radius(&params(0.0, m2), 1e-12).unwrap().r0)
            .collect();
        assert!(radii.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn result_invariants_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = params(rng.gen_range(0.0..3.0), rng.gen_range(0.1..5.0));
            let r = landau_radius(&p, 1e-12).unwrap();
            assert!(r.r0 > 0.0 && r.r0 < 1.0);
            assert!(r.phi_residual < RESIDUAL_TOL);
            assert_abs_diff_eq!(r.big_r0, covered_radius(r.r0, &p));
            assert_abs_diff_eq!(r.l2, 4.0 * p.m2 / PI / (1.0 - r.r0 * r.r0) + 2.0 / 3.0 * p.m1);
            assert!(r.l1 > 0.0);
            assert!(r.big_r0 < r.r0 * lambda_lower_bound(&p));
            for k in 0..1000 {
                let x = 1e-3 + 0.998 * k as f64 / 999.0;
                let d = 1e-4f64.min(1.0 - x - 1e-9);
                assert!(phi(x + d, &p).unwrap() < phi(x, &p).unwrap());
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert!(tau_monotonicity_check(0.2135599));
        assert!(tau_monotonicity_check(0.9));
        let r0 = 0.2135599;
        assert_abs_diff_eq!(tau1(1.0, r0), (2.0 - r0) / ((1.0 - r0) * (1.0 - r0)));
        assert!((1..1000).all(|k| tau1(k as f64 / 1000.0, r0) <= tau1(1.0, r0)));
    }

    #[test]
    fn lambda_examples() {
        assert_abs_diff_eq!(lambda_lower_bound(&params(0.0, 1.0)), PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lambda_lower_bound(&params(1.0, 1.0)), 0.515488838647190379, epsilon = 1e-15);
        let a = lambda_lower_bound(&params(0.7, 1.3));
        let b = lambda_lower_bound(&params(1.4, 2.6));
        assert_abs_diff_eq!(b, a / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn lower_lipschitz_vanishes_at_root() {
        let p = params(0.5, 1.5);
        let r = landau_radius(&p, 1e-13).unwrap();
        assert!(lower_lipschitz(r.r0, &p).unwrap().abs() < 1e-10);
        assert!(lower_lipschitz(0.5 * r.r0, &p).unwrap() > r.l1);
    }
}
