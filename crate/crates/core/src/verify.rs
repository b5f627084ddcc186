//! The acceptance suite: eleven criteria, each a list of checks against
//! independent oracles, with fast and strict sampling profiles.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::exec::{map_slice, Execution};
use crate::kernels::{ComplexPoint, C64};
use crate::landau::{self, LandauParameters};
use crate::potentials::{self, BoundaryFunction, SourceFunction};
use crate::quadrature::{self, tanh_sinh, DiskRule, RadialRule, SingularKind};
use crate::report::{ReportDocument, ToleranceConfig};
use crate::testbed::{self, BoundId, BoundReport, GridSpec, Scenario, SweepOptions};

pub const TOL_ENV: &str = "POISSON_LAB_TOL";

/// Sampling density of the suite; thresholds are the same in both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    #[default]
    Fast,
    Strict,
}

impl Profile {
    /// `POISSON_LAB_TOL` if set, otherwise `fallback`.
    pub fn from_env_or(fallback: Profile) -> Result<Profile> {
        match std::env::var(TOL_ENV) {
            Ok(v) if !v.trim().is_empty() => v.parse(),
            _ => Ok(fallback),
        }
    }

    fn pick<T>(self, fast: T, strict: T) -> T {
        match self {
            Profile::Fast => fast,
            Profile::Strict => strict,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.pick("fast", "strict")
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fast" => Ok(Profile::Fast),
            "strict" => Ok(Profile::Strict),
            other => Err(Error::InvalidParameter(format!("unknown tolerance profile `{other}` (fast or strict)"))),
        }
    }
}

/// One measured inequality: passes when `margin ≥ −slack`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub z: Option<ComplexPoint>,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
    pub slack: f64,
}

impl Check {
    /// `measured ≤ bound + slack`.
    pub fn upper(label: impl Into<String>, measured: f64, bound: f64, slack: f64) -> Self {
        Check {
            label: label.into(),
            z: None,
            measured,
            bound,
            margin: bound - measured,
            slack,
        }
    }

    /// `measured ≥ bound − slack`.
    pub fn lower(label: impl Into<String>, measured: f64, bound: f64, slack: f64) -> Self {
        Check {
            label: label.into(),
            z: None,
            measured,
            bound,
            margin: measured - bound,
            slack,
        }
    }

    /// `|measured − expected| ≤ tol`.
    pub fn close(label: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Check {
            label: label.into(),
            z: None,
            measured,
            bound: expected,
            margin: tol - (measured - expected).abs(),
            slack: 0.0,
        }
    }

    pub fn holds(label: impl Into<String>, ok: bool) -> Self {
        let v = if ok { 1.0 } else { 0.0 };
        Check {
            label: label.into(),
            z: None,
            measured: v,
            bound: 1.0,
            margin: v - 1.0,
            slack: 0.0,
        }
    }

    pub fn at(mut self, z: ComplexPoint) -> Self {
        self.z = Some(z);
        self
    }

    pub fn passed(&self) -> bool {
        self.margin >= -self.slack
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub summary: String,
    pub checks: Vec<Check>,
    pub sweeps: Vec<BoundReport>,
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| format!("{}: measured {:e}, bound {:e}, margin {:e}", c.label, c.measured, c.bound, c.margin))
            .collect();
        if let Some(e) = &self.error {
            out.push(e.clone());
        }
        out
    }

    /// Worst check, for one-line summaries.
    pub fn worst(&self) -> Option<&Check> {
        self.checks
            .iter()
            .min_by(|a, b| (a.margin + a.slack).total_cmp(&(b.margin + b.slack)))
    }

    pub fn document(&self, profile: Profile) -> ReportDocument {
        let mut doc = ReportDocument::new(
            format!("criterion-{:02}", self.id),
            self.name.clone(),
            self.sweeps.iter().map(|s| s.grid.clone()).collect::<Vec<_>>().join(";"),
            ToleranceConfig {
                profile: profile.to_string(),
                slack: testbed::DEFAULT_SLACK,
                sharp_tol: testbed::DEFAULT_SHARP_TOL,
            },
        );
        for c in &self.checks {
            doc.push(Some(c.label.clone()), c.z, c.measured, c.bound, c.margin);
        }
        for s in &self.sweeps {
            doc.extend_bound_report(s, Some(&format!("{} {}", s.scenario, s.bound)));
            doc.summary.sharp_points.extend(s.sharp_points.iter().map(|p| [p.re, p.im]));
        }
        doc.finish(self.passed(), self.failures());
        doc
    }
}

pub const CRITERIA: [(u8, &str, &str); 11] = [
    (1, "sharpness-pair", "g = -4, psi = 0: G_g(0) = -1 and the Schwarz bound is attained at the origin"),
    (2, "representation", "g = 1, psi = 1/4: f = |z|^2/4 on |z| <= 0.95 and the Laplacian residual is small"),
    (3, "green-magnitude", "|G_g(z)| <= (|g|/4)(1 - |z|^2) for random sources, with equality for constant g"),
    (4, "mu-function", "limits, monotonicity and quadrature oracles for mu"),
    (5, "closed-form-integrals", "I1, I2, I3, the log-sine integral and the singular disk integral"),
    (6, "landau-radius", "bisection root against the quadratic formula, residuals, monotonicity of phi and tau"),
    (7, "gradient-bound", "extremal harmonic map attains 4/pi; the gradient bound holds on mixed scenarios"),
    (8, "boundary-schwarz", "boundary difference quotients stay above 2/pi - 3|g|/4"),
    (9, "coefficient-bound", "|a_n| + |b_n| <= 4M/pi for random bounded harmonic functions"),
    (10, "landau-failure", "normalized stretch families: J(0) = 1, f(0) = 0, inscribed radius below 1/k + 0.05"),
    (11, "bi-lipschitz", "pair ratios in the disk of radius 0.9 r0 lie within [L1, L2]"),
];

pub fn criterion_name(id: u8) -> Option<&'static str> {
    CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1)
}

pub fn run_all(profile: Profile, exec: Execution) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0, profile, exec)).collect()
}

pub fn run_criterion(id: u8, profile: Profile, exec: Execution) -> CriterionResult {
    let (_, name, summary) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .unwrap_or((id, "unknown", "unknown criterion"));
    let mut ctx = Ctx {
        profile,
        exec,
        checks: Vec::new(),
        sweeps: Vec::new(),
    };
    let outcome = match id {
        1 => sharpness_pair(&mut ctx),
        2 => representation(&mut ctx),
        3 => green_magnitude(&mut ctx),
        4 => mu_function(&mut ctx),
        5 => closed_form_integrals(&mut ctx),
        6 => landau_radius(&mut ctx),
        7 => gradient_bound(&mut ctx),
        8 => boundary_schwarz(&mut ctx),
        9 => coefficient_bound(&mut ctx),
        10 => landau_failure(&mut ctx),
        11 => bi_lipschitz(&mut ctx),
        _ => Err(Error::InvalidParameter(format!("no criterion {id}"))),
    };
    CriterionResult {
        id,
        name: name.to_string(),
        summary: summary.to_string(),
        checks: ctx.checks,
        sweeps: ctx.sweeps,
        error: outcome.err().map(|e| e.to_string()),
    }
}

struct Ctx {
    profile: Profile,
    exec: Execution,
    checks: Vec<Check>,
    sweeps: Vec<BoundReport>,
}

impl Ctx {
    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn opts(&self, slack: f64) -> SweepOptions {
        SweepOptions {
            slack,
            sharp_tol: testbed::DEFAULT_SHARP_TOL,
            execution: self.exec,
        }
    }

    /// Records a sweep and its minimum margin as a check.
    fn sweep(&mut self, s: &Scenario, bound: BoundId, grid: &GridSpec, slack: f64) -> Result<BoundReport> {
        let report = testbed::measure(s, bound, grid, &self.opts(slack))?;
        self.check(Check::lower(
            format!("{} {} min margin over {} points", s.name, bound, report.records.len()),
            report.min_margin,
            0.0,
            slack,
        ));
        self.sweeps.push(report.clone());
        Ok(report)
    }

    fn disk_rule(&self) -> Result<DiskRule> {
        let (radial, angular) = self.profile.pick((96, 256), (128, 384));
        Ok(DiskRule::new(radial, angular)?.with_execution(self.exec))
    }

    fn solver(&self) -> potentials::SolverConfig {
        let (radial_n, angular_n) = self.profile.pick((96, 256), (128, 384));
        potentials::SolverConfig {
            radial_n,
            angular_n,
            execution: self.exec,
            ..potentials::SolverConfig::default()
        }
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn gauss_integral(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    // Composite 4 × 64-point rule; every oracle integrand here is smooth on [a, b].
    let rule = RadialRule::gauss_legendre(64);
    (0..4)
        .map(|k| {
            let h = (b - a) / 4.0;
            rule.integrate_interval(a + k as f64 * h, a + (k + 1) as f64 * h, &f)
        })
        .sum()
}

fn sharpness_pair(ctx: &mut Ctx) -> Result<()> {
    let s = Scenario::from_data_with(
        "sharpness-pair",
        SourceFunction::constant(c(-4.0)),
        BoundaryFunction::zero(),
        &ctx.solver(),
    )?;
    let g0 = s.solution().expect("solved scenario").green_part(ComplexPoint::ORIGIN)?;
    ctx.check(Check::close("G_g(0) = -1", g0.re, -1.0, 1e-6));
    ctx.check(Check::close("Im G_g(0) = 0", g0.im, 0.0, 1e-6));
    let grid = ctx.profile.pick(GridSpec::new(10, 20), GridSpec::new(20, 40));
    let report = ctx.sweep(&s, BoundId::Schwarz, &grid, 1e-8)?;
    let m0 = report.margin_at(ComplexPoint::ORIGIN).unwrap_or(f64::NAN);
    ctx.check(Check::close("Schwarz margin at the origin", m0, 0.0, 1e-6).at(ComplexPoint::ORIGIN));
    ctx.check(Check::lower("interior grid points", (report.records.len() - 1) as f64, 200.0, 0.0));
    Ok(())
}

fn representation(ctx: &mut Ctx) -> Result<()> {
    let s = Scenario::from_data_with(
        "quarter-modulus",
        SourceFunction::constant(c(1.0)),
        BoundaryFunction::constant(c(0.25)),
        &ctx.solver(),
    )?;
    let grid = ctx.profile.pick(GridSpec::new(12, 24), GridSpec::new(24, 48)).with_r_max(0.95);
    let errors = map_slice(ctx.exec, &grid.points(), |&z| {
        s.value(z).map(|v| (v - c(z.modulus().powi(2) / 4.0)).norm())
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let max_err = errors.into_iter().fold(0.0, f64::max);
    ctx.check(Check::upper("max |f - |z|^2/4| on |z| <= 0.95", max_err, 1e-6, 0.0));
    let spots = ctx.profile.pick(8, 24);
    let points: Vec<ComplexPoint> = (0..spots)
        .map(|k| ComplexPoint::from_polar(0.9 * (k + 1) as f64 / spots as f64, 2.0 * PI * k as f64 / 7.0))
        .collect();
    for z in points {
        let r = s.pde_residual(z, 1e-3)?;
        ctx.check(Check::upper("Laplacian residual", r, 1e-3, 0.0).at(z));
    }
    Ok(())
}

/// `g(w) = c₀ + c₁w + c₂w̄ + c₃|w|² + c₄w²` with random coefficients.
pub fn random_source(seed: u64) -> SourceFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coef = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let k = [coef(), coef(), coef(), coef(), coef()];
    SourceFunction::new(move |w: C64| k[0] + k[1] * w + k[2] * w.conj() + k[3] * w.norm_sqr() + k[4] * w * w)
}

fn green_magnitude(ctx: &mut Ctx) -> Result<()> {
    let rule = ctx.disk_rule()?;
    let grid = ctx.profile.pick(GridSpec::new(20, 20), GridSpec::new(25, 40));
    let points = grid.points();
    for seed in 0..5u64 {
        let g = random_source(seed);
        let gn = g.sup_norm();
        let margins = map_slice(ctx.exec, &points, |&z| {
            let v = potentials::green_potential(&g, z, &rule)?;
            Ok(bounds::greens_magnitude_bound(z.modulus(), gn) - v.norm())
        })
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
        let min = margins.into_iter().fold(f64::INFINITY, f64::min);
        ctx.check(Check::lower(format!("random source {seed}: min margin over {} points", points.len()), min, 0.0, 1e-8));
    }
    let g = SourceFunction::constant(c(-4.0));
    let devs = map_slice(ctx.exec, &points, |&z| {
        let v = potentials::green_potential(&g, z, &rule)?;
        Ok((v.norm() - bounds::greens_magnitude_bound(z.modulus(), 4.0)).abs())
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let max_dev = devs.into_iter().fold(0.0, f64::max);
    ctx.check(Check::upper("sharpness pair: equality at every grid point", max_dev, 1e-6, 0.0));
    Ok(())
}

/// `(1/4π) ∫_D (1 − |w|²)/(|z − w||1 − z w̄|) dA(w)`, the integral that `μ/‖g‖` majorizes in closed form.
pub fn mu_disk_oracle(z_mod: f64, rule: &DiskRule) -> Result<f64> {
    let z = ComplexPoint::new(z_mod, 0.0);
    let zc = z.c();
    let v = quadrature::integrate_disk_singular(
        rule,
        |w| c((1.0 - w.norm_sqr()) / (1.0 - zc * w.conj()).norm()),
        z,
        SingularKind::InverseDistance,
    )?;
    Ok(v.re / (4.0 * PI))
}

fn mu_function(ctx: &mut Ctx) -> Result<()> {
    let gn = 1.7;
    ctx.check(Check::close("3 mu(1e-4)/|g|", 3.0 * bounds::mu(1e-4, gn)? / gn, 1.0, 1e-6));
    ctx.check(Check::close("4 mu(0.999)/|g|", 4.0 * bounds::mu(0.999, gn)? / gn, 1.0, 1e-3));
    let n = 1000;
    let grid: Vec<f64> = (0..n).map(|k| 1e-3 + (1.0 - 2e-3) * k as f64 / (n - 1) as f64).collect();
    let vals = grid.iter().map(|&x| bounds::mu(x, gn)).collect::<Result<Vec<f64>>>()?;
    let worst_step = vals.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    ctx.check(Check::upper("mu strictly decreasing (largest step)", worst_step, 0.0, -f64::MIN_POSITIVE));
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(0.0, f64::max);
    ctx.check(Check::lower("mu >= |g|/4", lo, gn / 4.0, 0.0));
    ctx.check(Check::upper("mu <= |g|/3", hi, gn / 3.0, 0.0));
    let x = 0.5;
    let oracle = (1.0 - x * x) / 2.0
        * gauss_integral(0.0, 1.0, |r| (1.0 - r * r) * (1.0 + x * x * r * r) / (1.0 - x * x * r * r).powi(3));
    ctx.check(Check::close("mu(0.5) against the radial-integral oracle", bounds::mu(0.5, 1.0)?, oracle, 1e-8));
    ctx.check(Check::close("mu(0.5) against the I-combination", bounds::mu_from_integrals(0.5, 1.0)?, oracle, 1e-8));
    let rule = ctx.disk_rule()?;
    for x in [0.3, 0.5, 0.8] {
        let v = mu_disk_oracle(x, &rule)?;
        ctx.check(Check::close(format!("mu({x}) against the disk-integral oracle"), bounds::mu(x, 1.0)?, v, 1e-8));
    }
    Ok(())
}

/// `∫_D dA(w)/(|w||z − w|)` by nested tanh-sinh: outer in `ρ = |w|` split at
/// `|z|`, inner in the angle, with the distance `|ρ − |z||` carried exactly.
pub fn singular_disk_integral_brute(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "singular_disk_integral_brute",
            value: r,
            domain: "(0, 1)",
        });
    }
    let ring = |rho: f64, d: f64| {
        let s = 4.0 * r * rho;
        2.0 * tanh_sinh(0.0, PI, 1e-13, |t, _| {
            let h = (0.5 * t).sin();
            1.0 / (d * d + s * h * h).sqrt()
        })
        .value
    };
    let inner = tanh_sinh(0.0, r, 1e-12, |rho, gap| ring(rho, if rho > 0.5 * r { gap } else { r - rho }));
    let outer = tanh_sinh(r, 1.0, 1e-12, |rho, gap| {
        ring(rho, if rho < 0.5 * (1.0 + r) { gap } else { rho - r })
    });
    Ok(inner.value + outer.value)
}

fn closed_form_integrals(ctx: &mut Ctx) -> Result<()> {
    for x in [0.1, 0.5, 0.9] {
        let closed = [bounds::i1(x)?, bounds::i2(x)?, bounds::i3(x)?];
        for (k, v) in closed.into_iter().enumerate() {
            let q = gauss_integral(0.0, 1.0, |r| (1.0 - r * r * x * x).powi(-(k as i32 + 1)));
            ctx.check(Check::close(format!("I{} at {x}", k + 1), v, q, 1e-8));
        }
    }
    let exact = -FRAC_PI_2 * LN_2;
    ctx.check(Check::close("log-sine integral", bounds::log_sine_integral(), exact, 1e-6));
    ctx.check(Check::close("log-cosine integral", bounds::log_cosine_integral(), exact, 1e-6));
    for r in [0.2, 0.5, 0.8] {
        let closed = bounds::singular_disk_integral(r)?;
        ctx.check(Check::close(
            format!("singular disk integral at {r} against the 2D oracle"),
            closed,
            singular_disk_integral_brute(r)?,
            1e-4,
        ));
    }
    let n = ctx.profile.pick(100, 400);
    let worst = (1..=n)
        .map(|k| {
            let r = k as f64 / (n + 1) as f64;
            Ok(bounds::singular_disk_integral_upper(r)? - bounds::singular_disk_integral(r)?)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    ctx.check(Check::lower(format!("singular disk integral below its upper bound at {n} radii"), worst, 0.0, 0.0));
    Ok(())
}

fn phi_decrease_margin(p: &LandauParameters) -> Result<f64> {
    let mut worst = f64::INFINITY;
    for k in 0..1000 {
        let x = 1e-3 + 0.998 * k as f64 / 999.0;
        let d = 1e-4f64.min(1.0 - x - 1e-9);
        worst = worst.min(landau::phi(x, p)? - landau::phi(x + d, p)?);
    }
    Ok(worst)
}

fn landau_radius(ctx: &mut Ctx) -> Result<()> {
    let p = LandauParameters::new(0.0, 1.0)?;
    let r = landau::landau_radius(&p, 1e-13)?;
    let r0 = landau::quadratic_root(1.0);
    ctx.check(Check::close("r0 against the quadratic formula", r.r0, r0, 1e-9));
    ctx.check(Check::close("R0 against direct substitution", r.big_r0, landau::covered_radius(r0, &p), 1e-6));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let count = ctx.profile.pick(20, 100);
    let mut worst_residual = 0.0f64;
    let mut worst_decrease = f64::INFINITY;
    let mut tau_ok = true;
    for _ in 0..count {
        let p = LandauParameters::new(rng.gen_range(0.0..4.0), rng.gen_range(0.05..5.0))?;
        let r = landau::landau_radius(&p, 1e-12)?;
        worst_residual = worst_residual.max(r.phi_residual);
        worst_decrease = worst_decrease.min(phi_decrease_margin(&p)?);
        tau_ok &= landau::tau_monotonicity_check(r.r0);
    }
    ctx.check(Check::upper(format!("|phi(r0)| over {count} random parameter pairs"), worst_residual, 1e-10, 0.0));
    ctx.check(Check::lower("phi strictly decreasing (smallest drop)", worst_decrease, 0.0, -f64::MIN_POSITIVE));
    ctx.check(Check::holds("tau1, tau2 nondecreasing", tau_ok));
    Ok(())
}

fn gradient_bound(ctx: &mut Ctx) -> Result<()> {
    let colonna = testbed::builtin("colonna-extremal:1,1,0")?;
    let grid = ctx.profile.pick(GridSpec::new(16, 32), GridSpec::new(32, 64));
    let report = testbed::measure(&colonna, BoundId::HarmonicGradient, &grid, &ctx.opts(1e-6))?;
    let peak = report.records.iter().map(|r| r.measured).fold(0.0, f64::max);
    ctx.check(Check::lower("extremal map: max |D_f|(1-|z|^2) reaches 4/pi", peak, 4.0 / PI, 1e-3));
    ctx.check(Check::upper("extremal map: |D_f|(1-|z|^2) <= 4/pi", peak, 4.0 / PI, 1e-6));
    ctx.sweeps.push(report);
    for name in ["sharp-quadratic:1", "stretch-poisson:2", "boundary-poisson:0.1", "landau-quadratic:0.5", "colonna-extremal:2,-1,0.3+0.2i"] {
        let s = testbed::builtin(name)?;
        ctx.sweep(&s, BoundId::Gradient, &grid, 1e-6)?;
    }
    let mixed = Scenario::from_data_with(
        "solved-mixed",
        SourceFunction::new(|w| c(1.0) + 0.5 * w),
        BoundaryFunction::from_closure(|t| C64::from_polar(1.0, t) + c(0.25)),
        &ctx.solver(),
    )?;
    let small = ctx.profile.pick(GridSpec::new(6, 12), GridSpec::new(12, 24));
    ctx.sweep(&mixed, BoundId::Gradient, &small, 1e-6)?;
    Ok(())
}

fn boundary_schwarz(ctx: &mut Ctx) -> Result<()> {
    let r = 1.0 - 0.5f64.powi(14);
    for name in ["identity", "monomial:2"] {
        let s = testbed::builtin(name)?;
        testbed::boundary_hypotheses(&s)?;
        let q = testbed::boundary_quotient(&s, 0.0, &[r])?;
        ctx.check(Check::lower(format!("{name}: quotient at r = 1 - 2^-14 exceeds 2/pi"), q, 2.0 / PI, 0.0));
    }
    let s = testbed::builtin("boundary-poisson:0.1")?;
    testbed::boundary_hypotheses(&s)?;
    let q = testbed::boundary_quotient(&s, 0.0, &testbed::default_ladder())?;
    ctx.check(Check::lower("boundary-poisson:0.1 quotient", q, bounds::boundary_schwarz_lower(0.1)?, 1e-3));
    let grid = GridSpec::new(1, ctx.profile.pick(16, 64));
    for name in ["identity", "monomial:3", "colonna-extremal:1,1,0"] {
        ctx.sweep(&testbed::builtin(name)?, BoundId::BoundarySchwarz, &grid, 1e-3)?;
    }
    Ok(())
}

/// Random trigonometric polynomial boundary data of degree 6.
pub fn random_harmonic(seed: u64) -> BoundaryFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coefs: Vec<(i32, C64)> = (-6..=6)
        .map(|n: i32| {
            let scale = 1.0 / (1.0 + n.abs() as f64);
            (n, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
        })
        .collect();
    let coefs = Arc::new(coefs);
    BoundaryFunction::from_closure_sampled(
        move |t| coefs.iter().map(|&(n, a)| a * C64::from_polar(1.0, n as f64 * t)).sum(),
        4096,
    )
}

fn coefficient_bound(ctx: &mut Ctx) -> Result<()> {
    let count = ctx.profile.pick(10, 40);
    for seed in 0..count {
        let psi = random_harmonic(seed);
        let coeffs = potentials::harmonic_coefficients(&psi, 128)?;
        let m = psi.sup_norm();
        ctx.check(Check::upper(
            format!("random harmonic {seed}: max |a_n| + |b_n|"),
            coeffs.max_pair_sum(),
            4.0 * m / PI,
            1e-10,
        ));
    }
    Ok(())
}

fn landau_failure(ctx: &mut Ctx) -> Result<()> {
    let rows = testbed::landau_failure_demo(10, ctx.exec)?;
    for r in &rows {
        let k = r.k;
        ctx.check(Check::close(format!("k={k}: J(0) harmonic family"), r.jacobian_at_origin, 1.0, 1e-10));
        ctx.check(Check::close(format!("k={k}: J(0) Poisson family"), r.poisson_jacobian_at_origin, 1.0, 1e-10));
        ctx.check(Check::close(format!("k={k}: |f(0)| both families"), r.value_at_origin.max(r.poisson_value_at_origin), 0.0, 0.0));
        ctx.check(Check::upper(format!("k={k}: inscribed radius"), r.inscribed_radius, r.radius_limit, 0.0));
        ctx.check(Check::upper(format!("k={k}: Poisson family Laplacian residual"), r.poisson_residual, 1e-3, 0.0));
    }
    let worst_step = rows
        .windows(2)
        .map(|w| w[1].inscribed_radius - w[0].inscribed_radius)
        .fold(f64::NEG_INFINITY, f64::max);
    ctx.check(Check::upper("inscribed radius decreasing in k (largest step)", worst_step, 0.0, -f64::MIN_POSITIVE));
    Ok(())
}

fn bi_lipschitz(ctx: &mut Ctx) -> Result<()> {
    let pairs = ctx.profile.pick(10_000, 50_000);
    for (seed, name) in [(11u64, "identity"), (12, "landau-quadratic:0.25")] {
        let s = testbed::builtin(name)?;
        let p = s
            .landau_parameters()
            .ok_or_else(|| Error::HypothesisViolation(format!("`{name}` is not normalized")))?;
        let r = landau::landau_radius(&p, 1e-13)?;
        let rho = 0.9 * r.r0;
        let l1 = landau::lower_lipschitz(rho, &p)?;
        let (lo, hi) = testbed::bilipschitz_probe(&s, rho, pairs, seed, ctx.exec)?;
        ctx.check(Check::lower(format!("{name}: min pair ratio >= L1(0.9 r0)"), lo, l1, 1e-6));
        ctx.check(Check::upper(format!("{name}: max pair ratio <= L2"), hi, r.l2, 1e-6));
    }
    Ok(())
}
