//! Closed-form bound functions and auxiliary integrals.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{tanh_sinh, CircleRule};

/// Below this modulus `mu` is summed from its power series.
pub const MU_TAYLOR_THRESHOLD: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub p_norm: f64,
    pub g_norm: f64,
    pub z_mod: f64,
}

impl BoundInputs {
    pub fn new(p_norm: f64, g_norm: f64, z_mod: f64) -> Result<Self> {
        let b = BoundInputs { p_norm, g_norm, z_mod };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_norm.is_finite() && self.p_norm >= 0.0) {
            return Err(Error::InvalidParameter(format!("p_norm must be finite and >= 0, got {}", self.p_norm)));
        }
        if !(self.g_norm.is_finite() && self.g_norm >= 0.0) {
            return Err(Error::InvalidParameter(format!("g_norm must be finite and >= 0, got {}", self.g_norm)));
        }
        if !(0.0..=1.0).contains(&self.z_mod) {
            return Err(domain("z_mod", self.z_mod, "[0, 1]"));
        }
        Ok(())
    }
}

fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain { name, value, domain }
}

fn open_unit(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(domain(name, x, "(0, 1)"))
    }
}

/// `(4p/π) arctan|z| + (g/4)(1 − |z|²)`.
pub fn schwarz_bound(b: &BoundInputs) -> f64 {
    4.0 * b.p_norm / PI * b.z_mod.atan() + b.g_norm / 4.0 * (1.0 - b.z_mod * b.z_mod)
}

/// `μ(|z|)` for `0 < |z| < 1`; decreasing from `g/3` to `g/4`.
pub fn mu(z_mod: f64, g_norm: f64) -> Result<f64> {
    open_unit("mu", z_mod)?;
    let x = z_mod;
    let x2 = x * x;
    if x < MU_TAYLOR_THRESHOLD {
        // μ/g = 1/3 − Σ_{k≥2} x^{2k−2} / ((2k+1)(2k−1)(2k−3))
        let mut sum = 0.0;
        let mut p = x2;
        for k in 2..80 {
            let k = k as f64;
            let term = p / ((2.0 * k + 1.0) * (2.0 * k - 1.0) * (2.0 * k - 3.0));
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
            p *= x2;
        }
        return Ok(g_norm * (1.0 / 3.0 - sum));
    }
    let q = 1.0 - x2;
    let log_ratio = x.atanh() * 2.0;
    Ok(g_norm * q / (8.0 * x2) * ((1.0 + x2) / q - q / (2.0 * x) * log_ratio))
}

pub fn mu_limit_zero(g_norm: f64) -> f64 {
    g_norm / 3.0
}

pub fn mu_limit_one(g_norm: f64) -> f64 {
    g_norm / 4.0
}

/// `(4p/π)/(1 − |z|²) + 2μ(|z|)`, with the `|z| = 0` limit `4p/π + 2g/3`.
pub fn gradient_bound(b: &BoundInputs) -> Result<f64> {
    if !(b.z_mod >= 0.0 && b.z_mod < 1.0) {
        return Err(domain("gradient_bound", b.z_mod, "[0, 1)"));
    }
    let harmonic = 4.0 * b.p_norm / PI / (1.0 - b.z_mod * b.z_mod);
    let m = if b.z_mod == 0.0 {
        mu_limit_zero(b.g_norm)
    } else {
        mu(b.z_mod, b.g_norm)?
    };
    Ok(harmonic + 2.0 * m)
}

pub fn boundary_schwarz_threshold() -> f64 {
    8.0 / (3.0 * PI)
}

/// `2/π − 3g/4`, requiring `g < 8/(3π)`.
pub fn boundary_schwarz_lower(g_norm: f64) -> Result<f64> {
    if !(g_norm >= 0.0) {
        return Err(Error::InvalidParameter(format!("g_norm must be >= 0, got {g_norm}")));
    }
    if g_norm >= boundary_schwarz_threshold() {
        return Err(Error::HypothesisViolation(format!(
            "‖g‖∞ = {g_norm} is not below 8/(3π) = {}",
            boundary_schwarz_threshold()
        )));
    }
    Ok(2.0 / PI - 0.75 * g_norm)
}

fn log_half_ratio(x: f64) -> f64 {
    // log((1+x)/√(1−x²)) = atanh(x)
    x.atanh()
}

/// `∫₀¹ dr/(1 − r²|z|²)`.
pub fn i1(z_mod: f64) -> Result<f64> {
    open_unit("I1", z_mod)?;
    Ok(log_half_ratio(z_mod) / z_mod)
}

/// `∫₀¹ dr/(1 − r²|z|²)²`.
pub fn i2(z_mod: f64) -> Result<f64> {
    Ok(i1(z_mod)? / 2.0 + 1.0 / (2.0 * (1.0 - z_mod * z_mod)))
}

/// `∫₀¹ dr/(1 − r²|z|²)³`.
pub fn i3(z_mod: f64) -> Result<f64> {
    open_unit("I3", z_mod)?;
    let q = 1.0 - z_mod * z_mod;
    Ok(1.0 / (4.0 * q * q) + 3.0 / (8.0 * q) + 3.0 / (8.0 * z_mod) * log_half_ratio(z_mod))
}

/// `−I₁/|z|² + (3/|z|² − 1) I₂ + 2(1 − 1/|z|²) I₃`.
pub fn i_combination(z_mod: f64) -> Result<f64> {
    let x2 = z_mod * z_mod;
    Ok(-i1(z_mod)? / x2 + (3.0 / x2 - 1.0) * i2(z_mod)? + 2.0 * (1.0 - 1.0 / x2) * i3(z_mod)?)
}

/// `μ` assembled from the three radial integrals: `g(1 − |z|²)/2` times the combination.
pub fn mu_from_integrals(z_mod: f64, g_norm: f64) -> Result<f64> {
    Ok(g_norm * (1.0 - z_mod * z_mod) / 2.0 * i_combination(z_mod)?)
}

/// `g(1 − |z|²)/4`.
pub fn greens_magnitude_bound(z_mod: f64, g_norm: f64) -> f64 {
    g_norm * (1.0 - z_mod * z_mod) / 4.0
}

/// `M₁[log 4(1+|z|) − log|z|] |z| (2+|z|)`, with limit 0 at `|z| = 0`.
pub fn gg_deriv_deviation_bound(z_mod: f64, m1: f64) -> Result<f64> {
    if z_mod == 0.0 {
        return Ok(0.0);
    }
    open_unit("gg_deriv_deviation_bound", z_mod)?;
    let x = z_mod;
    Ok(m1 * ((4.0 * (1.0 + x)).ln() - x.ln()) * x * (2.0 + x))
}

/// `(4M₂/π) |z|(2 − |z|)/(1 − |z|)²`.
pub fn pf_deriv_deviation_bound(z_mod: f64, m2: f64) -> Result<f64> {
    if !(z_mod >= 0.0 && z_mod < 1.0) {
        return Err(domain("pf_deriv_deviation_bound", z_mod, "[0, 1)"));
    }
    let x = z_mod;
    Ok(4.0 * m2 / PI * x * (2.0 - x) / ((1.0 - x) * (1.0 - x)))
}

/// Closed form of `∫_D dA(w)/(|w||z − w|)` at `|z| = r`:
/// `∫₀^{2π} log(1 − r cos t + √(1 + r² − 2r cos t)) dt − 2π log r + 2π log 2`.
pub fn singular_disk_integral(r: f64) -> Result<f64> {
    open_unit("singular_disk_integral", r)?;
    let integrand = |t: f64| {
        let c = t.cos();
        (1.0 - r * c + (1.0 + r * r - 2.0 * r * c).sqrt()).ln()
    };
    let trapezoid = |n: usize| {
        let rule = CircleRule { n_nodes: n };
        rule.nodes().map(integrand).sum::<f64>() * rule.weight()
    };
    let mut n = 256;
    let mut prev = trapezoid(n);
    while n < 1 << 20 {
        n *= 2;
        let next = trapezoid(n);
        let done = (next - prev).abs() <= 1e-14 * next.abs();
        prev = next;
        if done {
            break;
        }
    }
    Ok(prev - 2.0 * PI * r.ln() + 2.0 * PI * 2f64.ln())
}

/// `2π log(4(1 + r)) − 2π log r`.
pub fn singular_disk_integral_upper(r: f64) -> Result<f64> {
    open_unit("singular_disk_integral_upper", r)?;
    Ok(2.0 * PI * (4.0 * (1.0 + r)).ln() - 2.0 * PI * r.ln())
}

/// Arithmetic–geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let m = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = m;
    }
    0.5 * (a + b)
}

/// The same disk integral reduced to one dimension: the angular integral at
/// radius `ρ` is `2π/AGM(r + ρ, |r − ρ|)`.
pub fn singular_disk_integral_agm(r: f64) -> Result<f64> {
    open_unit("singular_disk_integral_agm", r)?;
    let inner = tanh_sinh(0.0, r, 1e-14, |rho, gap| {
        let d = if rho > 0.5 * r { gap } else { r - rho };
        1.0 / agm(r + rho, d)
    });
    let outer = tanh_sinh(r, 1.0, 1e-14, |rho, gap| {
        let d = if rho < 0.5 * (1.0 + r) { gap } else { rho - r };
        1.0 / agm(r + rho, d)
    });
    Ok(2.0 * PI * (inner.value + outer.value))
}

/// `∫₀^{π/2} log sin x dx`.
pub fn log_sine_integral() -> f64 {
    tanh_sinh(0.0, FRAC_PI_2, 1e-15, |x, gap| {
        if x < 0.25 * PI {
            gap.sin().ln()
        } else {
            gap.cos().ln()
        }
    })
    .value
}

/// `∫₀^{π/2} log cos x dx`.
pub fn log_cosine_integral() -> f64 {
    tanh_sinh(0.0, FRAC_PI_2, 1e-15, |x, gap| {
        if x < 0.25 * PI {
            gap.cos().ln()
        } else {
            gap.sin().ln()
        }
    })
    .value
}
