//! The Poisson integral `P_ψ`, the Green potential `G_g`, and the solution
//! `f = P_ψ − G_g` of `Δf = g` on the unit disk with `f = ψ` on the circle.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, RwLock};

use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{pairwise_sum, Execution};
use crate::kernels::{self, ComplexPoint, WirtingerDerivatives, C64};
use crate::quadrature::{
    self, integrate_disk_singular, CircleRule, DiskRule, RadialRule, SingularKind,
};

pub const DEFAULT_BOUNDARY_SAMPLES: usize = 1024;
pub const DEFAULT_SERIES_TERMS: usize = 256;

/// Largest trapezoid size used for the Poisson integral near the circle.
const MAX_KERNEL_NODES: usize = 1 << 20;

pub type BoundaryFn = Arc<dyn Fn(f64) -> C64 + Send + Sync>;
pub type PointFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;

#[derive(Clone)]
enum BoundarySource {
    Closure(BoundaryFn),
    Samples(Arc<HarmonicCoefficients>),
}

/// Boundary data `t ↦ ψ(e^{it})`, held as a closure or as uniform samples.
#[derive(Clone)]
pub struct BoundaryFunction {
    source: BoundarySource,
    samples: Vec<C64>,
    sup_norm: f64,
    mean: C64,
}

impl fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("samples", &self.samples.len())
            .field("sup_norm", &self.sup_norm)
            .field("mean", &self.mean)
            .finish()
    }
}

impl BoundaryFunction {
    pub fn from_closure<F>(psi: F) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        Self::from_closure_sampled(psi, DEFAULT_BOUNDARY_SAMPLES)
    }

    pub fn from_closure_sampled<F>(psi: F, n_samples: usize) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        let n = n_samples.max(1);
        let rule = CircleRule { n_nodes: n };
        let samples: Vec<C64> = rule.nodes().map(&psi).collect();
        let (sup_norm, mean) = sample_stats(&samples);
        BoundaryFunction {
            source: BoundarySource::Closure(Arc::new(psi)),
            samples,
            sup_norm,
            mean,
        }
    }

    /// Boundary data given only by samples at `2πj/n`; values between nodes
    /// come from the trigonometric interpolant.
    pub fn from_samples(samples: Vec<C64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InsufficientSamples {
                requested: 1,
                samples: samples.len(),
            });
        }
        let coeffs = dft_coefficients(&samples, samples.len() / 2);
        let (sup_norm, mean) = sample_stats(&samples);
        Ok(BoundaryFunction {
            source: BoundarySource::Samples(Arc::new(coeffs)),
            samples,
            sup_norm,
            mean,
        })
    }

    pub fn constant(c: C64) -> Self {
        Self::from_closure(move |_| c).with_sup_norm(c.norm()).with_mean(c)
    }

    pub fn zero() -> Self {
        Self::constant(C64::new(0.0, 0.0))
    }

    /// Overrides the sampled `‖ψ‖_∞` (taken as `‖P_ψ‖_∞`).
    pub fn with_sup_norm(mut self, sup_norm: f64) -> Self {
        self.sup_norm = sup_norm;
        self
    }

    /// Overrides the sampled mean `(1/2π)∫ψ dt`.
    pub fn with_mean(mut self, mean: C64) -> Self {
        self.mean = mean;
        self
    }

    pub fn eval(&self, t: f64) -> C64 {
        match &self.source {
            BoundarySource::Closure(f) => f(t),
            BoundarySource::Samples(c) => c.value(C64::from_polar(1.0, t)),
        }
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn mean(&self) -> C64 {
        self.mean
    }
}

fn sample_stats(samples: &[C64]) -> (f64, C64) {
    let sup = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
    let mean = pairwise_sum(samples) / samples.len() as f64;
    (sup, mean)
}

/// Source term `g` of `Δf = g` on the closed disk.
#[derive(Clone)]
pub struct SourceFunction {
    f: PointFn,
    sup_norm: f64,
    zero: bool,
}

impl fmt::Debug for SourceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SourceFunction")
            .field("sup_norm", &self.sup_norm)
            .field("zero", &self.zero)
            .finish()
    }
}

impl SourceFunction {
    /// `‖g‖_∞` is estimated as the maximum over the default quadrature nodes
    /// and the boundary circle; use [`SourceFunction::with_sup_norm`] to supply it.
    pub fn new<F>(g: F) -> Self
    where
        F: Fn(C64) -> C64 + Send + Sync + 'static,
    {
        let sup_norm = estimate_sup(&g);
        SourceFunction {
            f: Arc::new(g),
            sup_norm,
            zero: false,
        }
    }

    pub fn constant(c: C64) -> Self {
        if c == C64::new(0.0, 0.0) {
            return Self::zero();
        }
        SourceFunction {
            f: Arc::new(move |_| c),
            sup_norm: c.norm(),
            zero: false,
        }
    }

    pub fn zero() -> Self {
        SourceFunction {
            f: Arc::new(|_| C64::new(0.0, 0.0)),
            sup_norm: 0.0,
            zero: true,
        }
    }

    pub fn with_sup_norm(mut self, sup_norm: f64) -> Self {
        self.sup_norm = sup_norm;
        self
    }

    pub fn eval(&self, w: C64) -> C64 {
        (self.f)(w)
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }
}

fn estimate_sup<F: Fn(C64) -> C64>(g: &F) -> f64 {
    let radial = RadialRule::gauss_legendre(quadrature::DEFAULT_RADIAL_NODES);
    let n_ang = quadrature::DEFAULT_ANGULAR_NODES;
    let mut sup = 0.0f64;
    for j in 0..n_ang {
        let e = C64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / n_ang as f64);
        for &r in &radial.nodes {
            sup = sup.max(g(e * r).norm());
        }
    }
    for j in 0..DEFAULT_BOUNDARY_SAMPLES {
        let e = C64::from_polar(1.0, 2.0 * PI * j as f64 / DEFAULT_BOUNDARY_SAMPLES as f64);
        sup = sup.max(g(e).norm());
    }
    sup
}

/// Coefficients of `Σ_{n≥0} a_n z^n + Σ_{n≥1} conj(b_n) z̄^n`, both indexed `0..=N`
/// (`b[0]` is always zero).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicCoefficients {
    pub a: Vec<C64>,
    pub b: Vec<C64>,
}

impl HarmonicCoefficients {
    pub fn degree(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn value(&self, z: C64) -> C64 {
        let zc = z.conj();
        let mut acc = self.a[0];
        let (mut zp, mut zcp) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
        for n in 1..self.a.len() {
            zp *= z;
            zcp *= zc;
            acc += self.a[n] * zp + self.b[n].conj() * zcp;
        }
        acc
    }

    /// Term-wise differentiated series: `(Σ n a_n z^{n-1}, conj(Σ n b_n z^{n-1}))`.
    pub fn derivatives(&self, z: C64) -> WirtingerDerivatives {
        let mut da = C64::new(0.0, 0.0);
        let mut db = C64::new(0.0, 0.0);
        let mut zp = C64::new(1.0, 0.0);
        for n in 1..self.a.len() {
            da += self.a[n] * zp * n as f64;
            db += self.b[n] * zp * n as f64;
            zp *= z;
        }
        WirtingerDerivatives::new(da, db.conj())
    }

    /// `max_{n≥1} (|a_n| + |b_n|)`.
    pub fn max_pair_sum(&self) -> f64 {
        (1..self.a.len())
            .map(|n| self.a[n].norm() + self.b[n].norm())
            .fold(0.0, f64::max)
    }

    /// Tail bound `Σ_{n>N} n (4M/π) r^{n-1}` on the truncated derivative series.
    pub fn truncation_bound(&self, z_mod: f64, sup_norm: f64) -> f64 {
        let n = self.degree() as f64;
        let r = z_mod;
        if r >= 1.0 {
            return f64::INFINITY;
        }
        4.0 * sup_norm / PI * r.powf(n) * ((n + 1.0) - n * r) / ((1.0 - r) * (1.0 - r))
    }
}

fn dft_coefficients(samples: &[C64], degree: usize) -> HarmonicCoefficients {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let mut a = vec![C64::new(0.0, 0.0); degree + 1];
    let mut b = vec![C64::new(0.0, 0.0); degree + 1];
    for k in 0..=degree {
        let pos = buf[k % n] * scale;
        let neg = buf[(n - k % n) % n] * scale;
        if 2 * k == n {
            // The Nyquist mode is shared between e^{ikt} and e^{-ikt}.
            a[k] = 0.5 * pos;
            b[k] = (0.5 * pos).conj();
        } else {
            a[k] = pos;
            if k > 0 {
                b[k] = neg.conj();
            }
        }
    }
    HarmonicCoefficients { a, b }
}

/// Fourier analysis of the boundary samples up to degree `n_terms`.
pub fn harmonic_coefficients(psi: &BoundaryFunction, n_terms: usize) -> Result<HarmonicCoefficients> {
    let samples = psi.samples();
    if n_terms == 0 || 2 * n_terms > samples.len() {
        return Err(Error::InsufficientSamples {
            requested: n_terms,
            samples: samples.len(),
        });
    }
    Ok(dft_coefficients(samples, n_terms))
}

/// Wirtinger pair of the harmonic extension from its coefficients.
pub fn poisson_extension_dz(coeffs: &HarmonicCoefficients, z: ComplexPoint) -> Result<WirtingerDerivatives> {
    require_interior(z, "poisson extension derivative")?;
    Ok(coeffs.derivatives(z.c()))
}

fn require_interior(z: ComplexPoint, context: &'static str) -> Result<()> {
    if z.is_interior() {
        Ok(())
    } else {
        Err(Error::OutsideDisk {
            modulus: z.modulus(),
            context,
        })
    }
}

/// Trapezoid size that resolves the Poisson kernel at radius `r` to double precision.
fn kernel_nodes(r: f64) -> usize {
    const BASE: usize = 256;
    if r < 0.5 {
        return BASE;
    }
    let needed = (37.0 / -r.ln()).ceil() as usize;
    needed.next_multiple_of(64).clamp(BASE, MAX_KERNEL_NODES)
}

/// Harmonic extension `P_ψ(z) = (1/2π)∫ P(z, e^{it}) ψ(e^{it}) dt`.
pub fn poisson_extension(psi: &BoundaryFunction, z: ComplexPoint) -> Result<C64> {
    require_interior(z, "boundary evaluation; use ψ directly")?;
    match &psi.source {
        BoundarySource::Samples(c) => Ok(c.value(z.c())),
        BoundarySource::Closure(f) => {
            let rule = CircleRule {
                n_nodes: kernel_nodes(z.modulus()),
            };
            let zc = z.c();
            let v = quadrature::integrate_circle(&rule, |t| f(t) * kernels::poisson_kernel_unchecked(zc, t));
            Ok(v / (2.0 * PI))
        }
    }
}

/// Green potential `G_g(z) = (1/2π)∫_D G(z, w) g(w) dA(w)`.
///
/// Evaluated in polar coordinates about `z`, with `G = log(1/|z-w|) + log|1-z w̄|`
/// split between the log-weighted and the plain radial rules.
pub fn green_potential(g: &SourceFunction, z: ComplexPoint, rule: &DiskRule) -> Result<C64> {
    require_interior(z, "green potential")?;
    if g.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let zc = z.c();
    let singular = integrate_disk_singular(rule, |w| g.eval(w), z, SingularKind::GreenLog)?;
    let smooth = integrate_disk_singular(
        rule,
        |w| g.eval(w) * (1.0 - zc * w.conj()).norm().ln(),
        z,
        SingularKind::Regular,
    )?;
    Ok((singular + smooth) / (2.0 * PI))
}

/// Green potential through the pullback `w = (z - ζ)/(1 - z̄ζ)`, which moves the
/// singularity to `ζ = 0`. Accurate away from the circle only.
pub fn green_potential_pullback(g: &SourceFunction, z: ComplexPoint, rule: &DiskRule) -> Result<C64> {
    require_interior(z, "green potential")?;
    if g.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let zc = z.c();
    let scale = (1.0 - z.modulus().powi(2)).powi(2);
    let v = integrate_disk_singular(
        rule,
        |zeta| {
            let w = kernels::mobius_unchecked(zc, zeta);
            g.eval(w) * (scale / (1.0 - zc.conj() * zeta).norm_sqr().powi(2))
        },
        ComplexPoint::ORIGIN,
        SingularKind::GreenLog,
    )?;
    Ok(v / (2.0 * PI))
}

/// `∂G_g/∂z = (1/4π)∫_D (1-|w|²) g(w) / ((z-w)(z w̄ - 1)) dA(w)`.
pub fn green_potential_dz(g: &SourceFunction, z: ComplexPoint, rule: &DiskRule) -> Result<C64> {
    require_interior(z, "green potential derivative")?;
    if g.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let zc = z.c();
    let v = integrate_disk_singular(
        rule,
        |w| {
            let d = zc - w;
            g.eval(w) * ((1.0 - w.norm_sqr()) * d.norm() / (d * (zc * w.conj() - 1.0)))
        },
        z,
        SingularKind::InverseDistance,
    )?;
    Ok(v / (4.0 * PI))
}

/// `∂G_g/∂z̄ = (1/4π)∫_D (1-|w|²) g(w) / ((z̄-w̄)(w z̄ - 1)) dA(w)`.
pub fn green_potential_dzbar(g: &SourceFunction, z: ComplexPoint, rule: &DiskRule) -> Result<C64> {
    require_interior(z, "green potential derivative")?;
    if g.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let zc = z.c();
    let v = integrate_disk_singular(
        rule,
        |w| {
            let d = (zc - w).conj();
            g.eval(w) * ((1.0 - w.norm_sqr()) * d.norm() / (d * (w * zc.conj() - 1.0)))
        },
        z,
        SingularKind::InverseDistance,
    )?;
    Ok(v / (4.0 * PI))
}

pub fn green_potential_wirtinger(g: &SourceFunction, z: ComplexPoint, rule: &DiskRule) -> Result<WirtingerDerivatives> {
    Ok(WirtingerDerivatives::new(
        green_potential_dz(g, z, rule)?,
        green_potential_dzbar(g, z, rule)?,
    ))
}

/// Quadrature and series settings for [`PoissonSolution`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub radial_n: usize,
    pub angular_n: usize,
    pub tol: f64,
    pub series_terms: usize,
    pub execution: Execution,
    pub cache: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            radial_n: quadrature::DEFAULT_RADIAL_NODES,
            angular_n: quadrature::DEFAULT_ANGULAR_NODES,
            tol: quadrature::DEFAULT_TOL,
            series_terms: DEFAULT_SERIES_TERMS,
            execution: Execution::default(),
            cache: false,
        }
    }
}

type PointCache = RwLock<HashMap<(u64, u64), C64>>;

/// Evaluator for `f = P_ψ − G_g`.
pub struct PoissonSolution {
    psi: BoundaryFunction,
    g: SourceFunction,
    disk: DiskRule,
    coeffs: HarmonicCoefficients,
    cache: Option<PointCache>,
}

impl fmt::Debug for PoissonSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PoissonSolution")
            .field("psi", &self.psi)
            .field("g", &self.g)
            .field("series_terms", &self.coeffs.degree())
            .finish()
    }
}

/// Builds the solution with default rules.
pub fn solve(psi: BoundaryFunction, g: SourceFunction) -> Result<PoissonSolution> {
    solve_with(psi, g, &SolverConfig::default())
}

pub fn solve_with(psi: BoundaryFunction, g: SourceFunction, config: &SolverConfig) -> Result<PoissonSolution> {
    let (_, disk) = quadrature::build_rules(config.radial_n, config.angular_n, config.tol)?;
    let disk = disk.with_execution(config.execution);
    let terms = config.series_terms.min(psi.samples().len() / 2);
    let coeffs = harmonic_coefficients(&psi, terms)?;
    Ok(PoissonSolution {
        psi,
        g,
        disk,
        coeffs,
        cache: config.cache.then(|| RwLock::new(HashMap::new())),
    })
}

impl PoissonSolution {
    pub fn boundary(&self) -> &BoundaryFunction {
        &self.psi
    }

    pub fn source(&self) -> &SourceFunction {
        &self.g
    }

    pub fn disk_rule(&self) -> &DiskRule {
        &self.disk
    }

    pub fn coefficients(&self) -> &HarmonicCoefficients {
        &self.coeffs
    }

    pub fn harmonic_part(&self, z: ComplexPoint) -> Result<C64> {
        poisson_extension(&self.psi, z)
    }

    pub fn green_part(&self, z: ComplexPoint) -> Result<C64> {
        green_potential(&self.g, z, &self.disk)
    }

    pub fn value(&self, z: ComplexPoint) -> Result<C64> {
        let key = (z.re.to_bits(), z.im.to_bits());
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.read().expect("cache lock").get(&key) {
                return Ok(*v);
            }
        }
        let v = self.harmonic_part(z)? - self.green_part(z)?;
        if let Some(cache) = &self.cache {
            cache.write().expect("cache lock").insert(key, v);
        }
        Ok(v)
    }

    /// `(f_z, f_zbar)`: series derivatives of `P_ψ` minus those of `G_g`.
    pub fn wirtinger(&self, z: ComplexPoint) -> Result<WirtingerDerivatives> {
        let harmonic = poisson_extension_dz(&self.coeffs, z)?;
        let green = green_potential_wirtinger(&self.g, z, &self.disk)?;
        Ok(harmonic - green)
    }

    /// Bound on the error from truncating the derivative series.
    pub fn truncation_bound(&self, z: ComplexPoint) -> f64 {
        self.coeffs.truncation_bound(z.modulus(), self.psi.sup_norm())
    }

    /// `|Δ_h f(z) − g(z)|` with the five-point Laplacian.
    pub fn laplacian_residual(&self, z: ComplexPoint, h: f64) -> Result<f64> {
        let reach = z.modulus() + h;
        if reach >= 1.0 {
            return Err(Error::StencilOutOfDomain { reach });
        }
        let zc = z.c();
        let i = C64::i();
        let at = |w: C64| self.value(w.into());
        let sum = at(zc + h)? + at(zc - h)? + at(zc + i * h)? + at(zc - i * h)? - 4.0 * at(zc)?;
        let lap = sum / (h * h);
        Ok((lap - self.g.eval(z.c())).norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn rule() -> DiskRule {
        DiskRule::new(quadrature::DEFAULT_RADIAL_NODES, quadrature::DEFAULT_ANGULAR_NODES).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn poisson_extension_examples() {
        let z = ComplexPoint::new(0.3, 0.2);
        let constant = BoundaryFunction::constant(c(2.0, -1.0));
        assert!((poisson_extension(&constant, z).unwrap() - c(2.0, -1.0)).norm() < 1e-14);

        let identity = BoundaryFunction::from_closure(|t| C64::from_polar(1.0, t));
        assert!((poisson_extension(&identity, z).unwrap() - z.c()).norm() < 1e-14);

        let square = BoundaryFunction::from_closure(|t| C64::from_polar(1.0, 2.0 * t));
        let v = poisson_extension(&square, z).unwrap();
        assert!((v - c(0.05, 0.12)).norm() < 1e-14);

        assert!(matches!(
            poisson_extension(&identity, ComplexPoint::new(1.0, 0.0)),
            Err(Error::OutsideDisk { .. })
        ));
    }

    #[test]
    fn poisson_extension_near_circle() {
        let identity = BoundaryFunction::from_closure(|t| C64::from_polar(1.0, t));
        for r in [0.9, 0.95, 0.99, 0.999] {
            let z = ComplexPoint::from_polar(r, 0.4);
            assert!((poisson_extension(&identity, z).unwrap() - z.c()).norm() < 1e-13, "r={r}");
        }
    }

    #[test]
    fn sampled_boundary_matches_closure() {
        let f = |t: f64| C64::from_polar(1.0, 3.0 * t) + c(0.5, 0.0) * C64::from_polar(1.0, -t);
        let samples: Vec<C64> = CircleRule { n_nodes: 64 }.nodes().map(f).collect();
        let sampled = BoundaryFunction::from_samples(samples).unwrap();
        let closure = BoundaryFunction::from_closure(f);
        let z = ComplexPoint::new(-0.4, 0.5);
        let a = poisson_extension(&sampled, z).unwrap();
        let b = poisson_extension(&closure, z).unwrap();
        assert!((a - b).norm() < 1e-13);
        assert!((sampled.eval(0.3) - f(0.3)).norm() < 1e-13);
    }

    #[test]
    fn boundary_mean_is_extension_at_origin() {
        let psi = BoundaryFunction::from_closure(|t| c(t.cos().exp(), (2.0 * t).sin()));
        let p0 = poisson_extension(&psi, ComplexPoint::ORIGIN).unwrap();
        assert!((psi.mean() - p0).norm() < 1e-12);
    }

    #[test]
    fn green_potential_examples() {
        let r = rule();
        let z = ComplexPoint::new(0.3, -0.5);
        assert_eq!(green_potential(&SourceFunction::zero(), z, &r).unwrap(), c(0.0, 0.0));
        let g = SourceFunction::constant(c(-4.0, 0.0));
        let v = green_potential(&g, z, &r).unwrap();
        assert!((v + (1.0 - z.modulus().powi(2))).norm() < 1e-13);
        let one = SourceFunction::constant(c(1.0, 0.0));
        assert_abs_diff_eq!(green_potential(&one, ComplexPoint::ORIGIN, &r).unwrap().re, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn green_potential_non_radial_source() {
        // Δu = -w with u = 0 on the circle: u = (w - w|w|²)/8.
        let r = rule();
        let g = SourceFunction::new(|w| w);
        for (rad, th) in [(0.0, 0.0), (0.4, 1.0), (0.9, -2.0), (0.99, 0.3)] {
            let z = ComplexPoint::from_polar(rad, th);
            let exact = (z.c() - z.c() * z.modulus().powi(2)) / 8.0;
            assert!((green_potential(&g, z, &r).unwrap() - exact).norm() < 1e-13);
        }
    }

    #[test]
    fn pullback_route_agrees_away_from_circle() {
        let r = rule();
        let g = SourceFunction::new(|w| c(1.0, 0.0) + w * w.conj() * w + c(0.0, 0.3) * w.conj());
        for (rad, th) in [(0.0, 0.0), (0.3, 2.0), (0.6, -1.0), (0.9, 0.5)] {
            let z = ComplexPoint::from_polar(rad, th);
            let a = green_potential(&g, z, &r).unwrap();
            let b = green_potential_pullback(&g, z, &r).unwrap();
            assert!((a - b).norm() < 1e-12, "|z|={rad}: {}", (a - b).norm());
        }
    }

    #[test]
    fn green_derivative_examples() {
        let r = rule();
        let z = ComplexPoint::new(0.5, 0.0);
        assert_eq!(green_potential_dz(&SourceFunction::zero(), z, &r).unwrap(), c(0.0, 0.0));
        let g = SourceFunction::constant(c(-4.0, 0.0));
        assert!((green_potential_dz(&g, z, &r).unwrap() - c(0.5, 0.0)).norm() < 1e-13);
        assert!((green_potential_dzbar(&g, z, &r).unwrap() - c(0.5, 0.0)).norm() < 1e-13);
        let radial = SourceFunction::new(|w| c(1.0 + w.norm_sqr(), 0.0));
        assert!(green_potential_dz(&radial, ComplexPoint::ORIGIN, &r).unwrap().norm() < 1e-14);
    }

    #[test]
    fn green_derivatives_non_radial() {
        let r = rule();
        let g = SourceFunction::new(|w| w);
        for (rad, th) in [(0.2, 0.1), (0.7, 2.5), (0.95, -0.8)] {
            let z = ComplexPoint::from_polar(rad, th);
            let d = green_potential_wirtinger(&g, z, &r).unwrap();
            let zz = z.c();
            assert!((d.fz - (1.0 - 2.0 * zz.norm_sqr()) / 8.0).norm() < 1e-13);
            assert!((d.fzbar + zz * zz / 8.0).norm() < 1e-13);
        }
    }

    #[test]
    fn harmonic_coefficient_examples() {
        let psi = BoundaryFunction::from_closure_sampled(|t| C64::from_polar(1.0, t), 64);
        let h = harmonic_coefficients(&psi, 8).unwrap();
        assert!((h.a[1] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(h.a.iter().enumerate().filter(|(n, _)| *n != 1).all(|(_, v)| v.norm() < 1e-14));
        assert!(h.b.iter().all(|v| v.norm() < 1e-14));

        let psi = BoundaryFunction::from_closure_sampled(|t| C64::from_polar(1.0, -t), 64);
        let h = harmonic_coefficients(&psi, 8).unwrap();
        assert!((h.b[1] - c(1.0, 0.0)).norm() < 1e-14);

        let psi = BoundaryFunction::from_closure_sampled(
            |t| c(3.0, 0.0) + 2.0 * C64::from_polar(1.0, 2.0 * t) + c(0.0, 1.0) * C64::from_polar(1.0, -t),
            64,
        );
        let h = harmonic_coefficients(&psi, 8).unwrap();
        assert!((h.a[0] - c(3.0, 0.0)).norm() < 1e-14);
        assert!((h.a[2] - c(2.0, 0.0)).norm() < 1e-14);
        assert!((h.b[1] - c(0.0, -1.0)).norm() < 1e-14);

        assert!(matches!(harmonic_coefficients(&psi, 33), Err(Error::InsufficientSamples { .. })));
        assert!(harmonic_coefficients(&psi, 32).is_ok());
    }

    #[test]
    fn series_derivative_examples() {
        let id = BoundaryFunction::from_closure_sampled(|t| C64::from_polar(1.0, t), 64);
        let h = harmonic_coefficients(&id, 16).unwrap();
        let d = poisson_extension_dz(&h, ComplexPoint::new(0.3, 0.1)).unwrap();
        assert!((d.fz - c(1.0, 0.0)).norm() < 1e-14 && d.fzbar.norm() < 1e-14);

        let sq = BoundaryFunction::from_closure_sampled(|t| C64::from_polar(1.0, 2.0 * t), 64);
        let h = harmonic_coefficients(&sq, 16).unwrap();
        let d = poisson_extension_dz(&h, 0.5.into()).unwrap();
        assert!((d.fz - c(1.0, 0.0)).norm() < 1e-14 && d.fzbar.norm() < 1e-14);

        let k = BoundaryFunction::constant(c(0.7, 0.2));
        let h = harmonic_coefficients(&k, 16).unwrap();
        let d = poisson_extension_dz(&h, 0.5.into()).unwrap();
        assert!(d.fz.norm() < 1e-15 && d.fzbar.norm() < 1e-15);
    }

    #[test]
    fn solve_examples() {
        let sharp = solve(BoundaryFunction::zero(), SourceFunction::constant(c(-4.0, 0.0))).unwrap();
        assert!((sharp.value(ComplexPoint::ORIGIN).unwrap() - c(1.0, 0.0)).norm() < 1e-13);

        let quarter = solve(BoundaryFunction::constant(c(0.25, 0.0)), SourceFunction::constant(c(1.0, 0.0))).unwrap();
        assert!(quarter.value(ComplexPoint::ORIGIN).unwrap().norm() < 1e-13);
        let z = ComplexPoint::new(0.6, -0.7);
        assert!((quarter.value(z).unwrap().re - z.modulus().powi(2) / 4.0).abs() < 1e-13);

        let id = solve(BoundaryFunction::from_closure(|t| C64::from_polar(1.0, t)), SourceFunction::zero()).unwrap();
        assert!((id.value(z).unwrap() - z.c()).norm() < 1e-13);
    }

    #[test]
    fn solution_wirtinger_matches_numeric_and_residual_small() {
        let psi = BoundaryFunction::from_closure(|t| C64::from_polar(1.0, t) + c(0.25, 0.0));
        let g = SourceFunction::new(|w| c(1.0, 0.0) + 0.5 * w);
        let sol = solve_with(psi, g, &SolverConfig { cache: true, ..SolverConfig::default() }).unwrap();
        for z in [ComplexPoint::new(0.1, 0.2), ComplexPoint::new(-0.6, 0.3)] {
            let exact = sol.wirtinger(z).unwrap();
            let numeric = kernels::wirtinger_numeric(|w| sol.value(w.into()).unwrap(), z, 1e-4).unwrap();
            assert!((exact.fz - numeric.fz).norm() < 1e-6);
            assert!((exact.fzbar - numeric.fzbar).norm() < 1e-6);
            assert!(sol.laplacian_residual(z, 1e-3).unwrap() < 1e-4);
        }
    }

    #[test]
    fn source_sup_norm_dominates_nodes() {
        let g = SourceFunction::new(|w| c(1.0, 0.0) + w * w);
        assert!(g.sup_norm() >= 2.0 - 1e-12);
        let r = rule();
        assert!(r.nodes().iter().all(|(w, _)| g.eval(*w).norm() <= g.sup_norm()));
    }

    #[test]
    fn truncation_bound_decays() {
        let psi = BoundaryFunction::from_closure(|t| C64::from_polar(1.0, t));
        let h = harmonic_coefficients(&psi, 64).unwrap();
        assert!(h.truncation_bound(0.5, 1.0) < 1e-15);
        assert!(h.truncation_bound(0.9, 1.0) > h.truncation_bound(0.5, 1.0));
        assert!(h.truncation_bound(1.0, 1.0).is_infinite());
    }
}
