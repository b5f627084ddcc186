//! Built-in scenarios and grid sweeps that measure each bound.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundInputs};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, map_slice, Execution};
use crate::kernels::{self, ComplexPoint, WirtingerDerivatives, C64};
use crate::landau::LandauParameters;
use crate::potentials::{self, BoundaryFunction, PoissonSolution, PointFn, SourceFunction};

pub type WirtingerFn = Arc<dyn Fn(C64) -> WirtingerDerivatives + Send + Sync>;

pub const DEFAULT_SLACK: f64 = 1e-8;
pub const DEFAULT_SHARP_TOL: f64 = 1e-6;
/// Radius standing in for the boundary point itself in difference quotients.
pub const BOUNDARY_LIMIT_RADIUS: f64 = 1.0 - 1e-8;

/// The inequalities a sweep can measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundId {
    /// `|f(z) − ((1−|z|²)/(1+|z|²)) P_ψ(0)| ≤ (4p/π) arctan|z| + (g/4)(1−|z|²)`.
    Schwarz,
    /// `liminf |f(ζ) − f(rζ)|/(1−r) ≥ 2/π − 3g/4`.
    BoundarySchwarz,
    /// `‖D_f(z)‖ ≤ (4p/π)/(1−|z|²) + 2μ(|z|)`.
    Gradient,
    /// Harmonic case: `|f(z) − ((1−|z|²)/(1+|z|²)) f(0)| ≤ (4M/π) arctan|z|`.
    HarmonicSchwarz,
    /// Harmonic case: `‖D_f(z)‖(1−|z|²) ≤ 4M/π`.
    HarmonicGradient,
}

impl BoundId {
    pub const ALL: [BoundId; 5] = [
        BoundId::Schwarz,
        BoundId::BoundarySchwarz,
        BoundId::Gradient,
        BoundId::HarmonicSchwarz,
        BoundId::HarmonicGradient,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Schwarz => "schwarz",
            BoundId::BoundarySchwarz => "boundary-schwarz",
            BoundId::Gradient => "gradient",
            BoundId::HarmonicSchwarz => "harmonic-schwarz",
            BoundId::HarmonicGradient => "harmonic-gradient",
        }
    }

    /// Lower bounds report `margin = measured − bound`, upper bounds `bound − measured`.
    pub fn is_lower_bound(self) -> bool {
        matches!(self, BoundId::BoundarySchwarz)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "schwarz" => Ok(BoundId::Schwarz),
            "boundary" | "boundary-schwarz" => Ok(BoundId::BoundarySchwarz),
            "gradient" => Ok(BoundId::Gradient),
            "harmonic-schwarz" => Ok(BoundId::HarmonicSchwarz),
            "harmonic-gradient" => Ok(BoundId::HarmonicGradient),
            other => Err(Error::InvalidParameter(format!(
                "unknown bound `{other}` (expected schwarz, boundary, gradient, harmonic-schwarz or harmonic-gradient)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedStatus {
    Holds,
    SharpAt,
    ViolatesHypothesis,
}

impl fmt::Display for ExpectedStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpectedStatus::Holds => "holds",
            ExpectedStatus::SharpAt => "sharp-at",
            ExpectedStatus::ViolatesHypothesis => "violates-hypothesis",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub bound: BoundId,
    pub status: ExpectedStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sharp_points: Vec<ComplexPoint>,
}

#[derive(Clone)]
enum Representation {
    Explicit { f: PointFn, df: WirtingerFn },
    Solved(Arc<PoissonSolution>),
}

/// A test case: source `g`, boundary data `ψ`, the solution `f`, and its known constants.
#[derive(Clone)]
pub struct Scenario {
    pub name: String,
    pub g: SourceFunction,
    pub psi: BoundaryFunction,
    repr: Representation,
    pub constants: BTreeMap<String, f64>,
    pub expectations: Vec<Expectation>,
    pub harmonic: bool,
    pub univalent: bool,
    pub landau_class: bool,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario")
            .field("name", &self.name)
            .field("constants", &self.constants)
            .field("expectations", &self.expectations)
            .field("harmonic", &self.harmonic)
            .finish()
    }
}

impl Scenario {
    /// Scenario with a closed-form `f` and exact Wirtinger derivatives; `ψ` is `f` on the circle.
    pub fn explicit<F, D>(name: impl Into<String>, f: F, df: D, g: SourceFunction) -> Self
    where
        F: Fn(C64) -> C64 + Send + Sync + 'static,
        D: Fn(C64) -> WirtingerDerivatives + Send + Sync + 'static,
    {
        let f: PointFn = Arc::new(f);
        let on_circle = f.clone();
        let psi = BoundaryFunction::from_closure(move |t| on_circle(C64::from_polar(1.0, t)));
        let harmonic = g.is_zero();
        let mut s = Scenario {
            name: name.into(),
            g,
            psi,
            repr: Representation::Explicit { f, df: Arc::new(df) },
            constants: BTreeMap::new(),
            expectations: Vec::new(),
            harmonic,
            univalent: false,
            landau_class: false,
        };
        s.record_norms();
        s
    }

    /// Scenario defined only by data; `f` comes from the integral representation.
    pub fn from_data(name: impl Into<String>, g: SourceFunction, psi: BoundaryFunction) -> Result<Self> {
        Self::from_data_with(name, g, psi, &potentials::SolverConfig::default())
    }

    pub fn from_data_with(
        name: impl Into<String>,
        g: SourceFunction,
        psi: BoundaryFunction,
        config: &potentials::SolverConfig,
    ) -> Result<Self> {
        let solution = potentials::solve_with(psi.clone(), g.clone(), config)?;
        let harmonic = g.is_zero();
        let mut constants = BTreeMap::new();
        constants.insert("M1".to_string(), g.sup_norm());
        constants.insert("P".to_string(), psi.sup_norm());
        Ok(Scenario {
            name: name.into(),
            g,
            psi,
            repr: Representation::Solved(Arc::new(solution)),
            constants,
            expectations: Vec::new(),
            harmonic,
            univalent: false,
            landau_class: false,
        })
    }

    fn record_norms(&mut self) {
        self.constants.insert("M1".to_string(), self.g.sup_norm());
        self.constants.insert("P".to_string(), self.psi.sup_norm());
        let m2 = self.sampled_sup_modulus();
        self.constants.insert("M2".to_string(), m2);
    }

    fn sampled_sup_modulus(&self) -> f64 {
        let mut sup = self.psi.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
        if let Representation::Explicit { f, .. } = &self.repr {
            for i in 1..=32 {
                let r = i as f64 / 32.0;
                for j in 0..64 {
                    sup = sup.max(f(C64::from_polar(r, 2.0 * PI * j as f64 / 64.0)).norm());
                }
            }
            sup = sup.max(f(C64::new(0.0, 0.0)).norm());
        }
        sup
    }

    pub fn with_constant(mut self, key: &str, value: f64) -> Self {
        self.constants.insert(key.to_string(), value);
        self
    }

    pub fn expect(mut self, bound: BoundId, status: ExpectedStatus) -> Self {
        self.expectations.retain(|e| e.bound != bound);
        self.expectations.push(Expectation {
            bound,
            status,
            sharp_points: Vec::new(),
        });
        self
    }

    pub fn expect_sharp(mut self, bound: BoundId, points: Vec<ComplexPoint>) -> Self {
        self.expectations.retain(|e| e.bound != bound);
        self.expectations.push(Expectation {
            bound,
            status: ExpectedStatus::SharpAt,
            sharp_points: points,
        });
        self
    }

    fn with_psi_norms(mut self, sup: f64, mean: C64) -> Self {
        self.psi = self.psi.with_sup_norm(sup).with_mean(mean);
        self.constants.insert("P".to_string(), sup);
        self
    }

    fn univalent(mut self) -> Self {
        self.univalent = true;
        self
    }

    fn landau(mut self) -> Self {
        self.landau_class = true;
        self
    }

    pub fn expectation(&self, bound: BoundId) -> Option<&Expectation> {
        self.expectations.iter().find(|e| e.bound == bound)
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.repr, Representation::Explicit { .. })
    }

    pub fn solution(&self) -> Option<&PoissonSolution> {
        match &self.repr {
            Representation::Solved(s) => Some(s),
            Representation::Explicit { .. } => None,
        }
    }

    pub fn value(&self, z: ComplexPoint) -> Result<C64> {
        match &self.repr {
            Representation::Explicit { f, .. } => {
                if !z.in_closed_disk() {
                    return Err(Error::OutsideDisk {
                        modulus: z.modulus(),
                        context: "scenario evaluation",
                    });
                }
                Ok(f(z.c()))
            }
            Representation::Solved(s) => s.value(z),
        }
    }

    pub fn wirtinger(&self, z: ComplexPoint) -> Result<WirtingerDerivatives> {
        match &self.repr {
            Representation::Explicit { df, .. } => {
                if !z.is_interior() {
                    return Err(Error::OutsideDisk {
                        modulus: z.modulus(),
                        context: "scenario derivative",
                    });
                }
                Ok(df(z.c()))
            }
            Representation::Solved(s) => s.wirtinger(z),
        }
    }

    /// Value on the circle: `f(e^{it})` for explicit scenarios, `ψ(e^{it})` otherwise.
    pub fn boundary_value(&self, t: f64) -> C64 {
        match &self.repr {
            Representation::Explicit { f, .. } => f(C64::from_polar(1.0, t)),
            Representation::Solved(_) => self.psi.eval(t),
        }
    }

    /// `f(ζ)` read as the radial limit, taken at `r = 1 − 1e-8`.
    pub fn radial_limit(&self, theta: f64) -> Result<C64> {
        match &self.repr {
            Representation::Explicit { f, .. } => Ok(f(C64::from_polar(BOUNDARY_LIMIT_RADIUS, theta))),
            Representation::Solved(_) => Ok(self.psi.eval(theta)),
        }
    }

    /// `‖P_ψ‖_∞`.
    pub fn p_norm(&self) -> f64 {
        self.psi.sup_norm()
    }

    /// `‖g‖_∞`.
    pub fn g_norm(&self) -> f64 {
        self.g.sup_norm()
    }

    pub fn constant(&self, key: &str) -> Option<f64> {
        self.constants.get(key).copied()
    }

    /// `(M₁, M₂) = (‖g‖_∞, sup|f|)` when the scenario is normalized with `f(0) = 0`, `J_f(0) = 1`.
    pub fn landau_parameters(&self) -> Option<LandauParameters> {
        if !self.landau_class {
            return None;
        }
        let m1 = self.constant("M1").unwrap_or(self.g_norm());
        let m2 = self.constant("M2")?;
        LandauParameters::new(m1, m2).ok()
    }

    /// `|Δ_h f(z) − g(z)|`.
    pub fn pde_residual(&self, z: ComplexPoint, h: f64) -> Result<f64> {
        match &self.repr {
            Representation::Explicit { f, .. } => {
                let lap = kernels::laplacian_numeric(|w| f(w), z, h)?;
                Ok((lap - self.g.eval(z.c())).norm())
            }
            Representation::Solved(s) => s.laplacian_residual(z, h),
        }
    }
}

fn parse_params(name: &str) -> (String, Vec<String>) {
    let name = name.trim();
    let (base, rest) = if let Some(i) = name.find(['(', ':']) {
        let rest = name[i + 1..].trim_end_matches(')');
        (&name[..i], rest)
    } else {
        (name, "")
    };
    let params = rest
        .split(',')
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect();
    (base.trim().to_ascii_lowercase(), params)
}

/// Parses `x`, `yi`, `x+yi`, `x-yi`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidParameter(format!("cannot parse complex number `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, imag(&body[k..])?))
        }
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

fn real_param(params: &[String], idx: usize, default: f64, what: &str) -> Result<f64> {
    match params.get(idx) {
        None => Ok(default),
        Some(p) => p
            .parse::<f64>()
            .map_err(|_| Error::InvalidParameter(format!("{what} must be a real number, got `{p}`"))),
    }
}

fn positive(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!("{what} must be positive, got {x}")))
    }
}

/// Names accepted by [`builtin`], with their parameter lists.
pub const BUILTIN_NAMES: [&str; 8] = [
    "sharp-quadratic:M",
    "stretch-poisson:k",
    "stretch-harmonic:k",
    "colonna-extremal:M,alpha,a",
    "identity",
    "monomial:n",
    "boundary-poisson:g0",
    "landau-quadratic:c",
];

/// Looks up a built-in scenario by `name` or `name:p1,p2` (also `name(p1,p2)`).
pub fn builtin(name: &str) -> Result<Scenario> {
    let (base, params) = parse_params(name);
    let zero = || C64::new(0.0, 0.0);
    let one = || C64::new(1.0, 0.0);
    match base.as_str() {
        "sharp-quadratic" => {
            let m = positive(real_param(&params, 0, 1.0, "M")?, "M")?;
            Ok(Scenario::explicit(
                format!("sharp-quadratic:{m}"),
                move |z| C64::new(m * (1.0 - z.norm_sqr()), 0.0),
                move |z| WirtingerDerivatives::new(-m * z.conj(), -m * z),
                SourceFunction::constant(C64::new(-4.0 * m, 0.0)),
            )
            .with_psi_norms(0.0, zero())
            .with_constant("M", m)
            .expect_sharp(BoundId::Schwarz, vec![ComplexPoint::ORIGIN])
            .expect(BoundId::Gradient, ExpectedStatus::Holds)
            .expect(BoundId::BoundarySchwarz, ExpectedStatus::ViolatesHypothesis))
        }
        "stretch-poisson" => {
            let k = positive(real_param(&params, 0, 2.0, "k")?, "k")?;
            let (s, d) = (0.5 * (k + 1.0 / k), 0.5 * (k - 1.0 / k));
            Ok(Scenario::explicit(
                format!("stretch-poisson:{k}"),
                move |z| C64::new(k * z.re + 0.25 * z.norm_sqr(), z.im / k),
                move |z| WirtingerDerivatives::new(s + 0.25 * z.conj(), d + 0.25 * z),
                SourceFunction::constant(one()),
            )
            .with_constant("k", k)
            .univalent()
            .landau()
            .expect(BoundId::Schwarz, ExpectedStatus::Holds)
            .expect(BoundId::Gradient, ExpectedStatus::Holds)
            .expect(BoundId::BoundarySchwarz, ExpectedStatus::ViolatesHypothesis))
        }
        "stretch-harmonic" => {
            let k = positive(real_param(&params, 0, 2.0, "k")?, "k")?;
            let (s, d) = (0.5 * (k + 1.0 / k), 0.5 * (k - 1.0 / k));
            let boundary = if k == 1.0 {
                ExpectedStatus::Holds
            } else {
                ExpectedStatus::ViolatesHypothesis
            };
            Ok(harmonic_expectations(
                Scenario::explicit(
                    format!("stretch-harmonic:{k}"),
                    move |z| C64::new(k * z.re, z.im / k),
                    move |_| WirtingerDerivatives::new(C64::new(s, 0.0), C64::new(d, 0.0)),
                    SourceFunction::zero(),
                )
                .with_constant("k", k)
                .univalent()
                .landau(),
            )
            .expect(BoundId::BoundarySchwarz, boundary))
        }
        "colonna-extremal" => {
            let m = positive(real_param(&params, 0, 1.0, "M")?, "M")?;
            let alpha = params.get(1).map(|p| parse_complex(p)).transpose()?.unwrap_or(one());
            if (alpha.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("alpha must have modulus 1, got {alpha}")));
            }
            let a = params.get(2).map(|p| parse_complex(p)).transpose()?.unwrap_or(zero());
            if a.norm() >= 1.0 {
                return Err(Error::InvalidParameter(format!("a must lie inside the disk, got {a}")));
            }
            colonna_extremal(m, alpha, a)
        }
        "identity" => Ok(harmonic_expectations(
            Scenario::explicit(
                "identity",
                |z| z,
                |_| WirtingerDerivatives::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
                SourceFunction::zero(),
            )
            .univalent()
            .landau(),
        )
        .expect(BoundId::BoundarySchwarz, ExpectedStatus::Holds)),
        "monomial" => {
            let n = real_param(&params, 0, 2.0, "n")?;
            if !(n >= 1.0 && n.fract() == 0.0 && n <= 64.0) {
                return Err(Error::InvalidParameter(format!("n must be an integer in [1, 64], got {n}")));
            }
            let n = n as i32;
            let s = harmonic_expectations(Scenario::explicit(
                format!("monomial:{n}"),
                move |z| z.powi(n),
                move |z| WirtingerDerivatives::new(n as f64 * z.powi(n - 1), C64::new(0.0, 0.0)),
                SourceFunction::zero(),
            ))
            .expect(BoundId::BoundarySchwarz, ExpectedStatus::Holds);
            Ok(if n == 1 { s.univalent().landau() } else { s })
        }
        "boundary-poisson" => {
            let g0 = real_param(&params, 0, 0.1, "g0")?;
            if !(0.0..4.0).contains(&g0) {
                return Err(Error::InvalidParameter(format!("g0 must lie in [0, 4), got {g0}")));
            }
            let (lin, quad) = (1.0 - g0 / 4.0, g0 / 4.0);
            let status = if g0 < bounds::boundary_schwarz_threshold() {
                ExpectedStatus::Holds
            } else {
                ExpectedStatus::ViolatesHypothesis
            };
            Ok(Scenario::explicit(
                format!("boundary-poisson:{g0}"),
                move |z| lin * z + quad * z.norm_sqr(),
                move |z| WirtingerDerivatives::new(lin + quad * z.conj(), quad * z),
                SourceFunction::constant(C64::new(g0, 0.0)),
            )
            .with_constant("g0", g0)
            .expect(BoundId::Schwarz, ExpectedStatus::Holds)
            .expect(BoundId::Gradient, ExpectedStatus::Holds)
            .expect(BoundId::BoundarySchwarz, status))
        }
        "landau-quadratic" => {
            let c = real_param(&params, 0, 0.25, "c")?;
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidParameter(format!("c must be >= 0, got {c}")));
            }
            Ok(Scenario::explicit(
                format!("landau-quadratic:{c}"),
                move |z| z + c * z.norm_sqr(),
                move |z| WirtingerDerivatives::new(1.0 + c * z.conj(), c * z),
                SourceFunction::constant(C64::new(4.0 * c, 0.0)),
            )
            .with_constant("c", c)
            .with_constant("M1", 4.0 * c)
            .with_constant("M2", 1.0 + c)
            .landau()
            .expect(BoundId::Schwarz, ExpectedStatus::Holds)
            .expect(BoundId::Gradient, ExpectedStatus::Holds)
            .expect(
                BoundId::BoundarySchwarz,
                if c == 0.0 {
                    ExpectedStatus::Holds
                } else {
                    ExpectedStatus::ViolatesHypothesis
                },
            ))
        }
        _ => Err(Error::UnknownScenario(name.to_string())),
    }
}

fn harmonic_expectations(s: Scenario) -> Scenario {
    s.expect(BoundId::Schwarz, ExpectedStatus::Holds)
        .expect(BoundId::Gradient, ExpectedStatus::Holds)
        .expect(BoundId::HarmonicSchwarz, ExpectedStatus::Holds)
        .expect(BoundId::HarmonicGradient, ExpectedStatus::Holds)
}

/// `f = (2Mα/π) arg((1+φ)/(1−φ))` with `φ(z) = (a − z)/(1 − ā z)`.
fn colonna_extremal(m: f64, alpha: C64, a: C64) -> Result<Scenario> {
    let c = alpha * (2.0 * m / PI);
    let phi = move |z: C64| (a - z) / (1.0 - a.conj() * z);
    let f = move |z: C64| {
        let p = phi(z);
        // arg((1+φ)/(1−φ)) = arg((1+φ)(1−φ̄)), finite on the whole closed disk
        c * (2.0 * p.im).atan2(1.0 - p.norm_sqr())
    };
    let df = move |z: C64| {
        let p = phi(z);
        let dphi = (a.norm_sqr() - 1.0) / (1.0 - a.conj() * z).powi(2);
        let dh = 2.0 * dphi / (1.0 - p * p);
        let i2 = C64::new(0.0, 2.0);
        WirtingerDerivatives::new(c * dh / i2, -c * dh.conj() / i2)
    };
    let f0 = f(C64::new(0.0, 0.0));
    let boundary = if a == C64::new(0.0, 0.0) && (m - 1.0).abs() < 1e-15 {
        ExpectedStatus::Holds
    } else {
        ExpectedStatus::ViolatesHypothesis
    };
    Ok(Scenario::explicit(format!("colonna-extremal:{m},{},{}", fmt_complex(alpha), fmt_complex(a)), f, df, SourceFunction::zero())
        .with_psi_norms(m, f0)
        .with_constant("M", m)
        .with_constant("M2", m)
        .expect(BoundId::Schwarz, ExpectedStatus::Holds)
        .expect_sharp(BoundId::Gradient, vec![ComplexPoint::from(a)])
        .expect(BoundId::HarmonicSchwarz, ExpectedStatus::Holds)
        .expect_sharp(BoundId::HarmonicGradient, vec![ComplexPoint::from(a)])
        .expect(BoundId::BoundarySchwarz, boundary))
}

fn fmt_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Polar grid: the origin plus `radial` rings up to `r_max`, each with `angular` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
    pub r_max: f64,
}

impl GridSpec {
    pub const DEFAULT_R_MAX: f64 = 0.95;

    pub fn new(radial: usize, angular: usize) -> Self {
        GridSpec {
            radial,
            angular,
            r_max: Self::DEFAULT_R_MAX,
        }
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = r_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial == 0 || self.angular == 0 {
            return Err(Error::InvalidParameter(format!("grid sizes must be positive, got {self}")));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::InvalidParameter(format!("grid radius must lie in (0, 1), got {}", self.r_max)));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        1 + self.radial * self.angular
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.angular as f64
    }

    pub fn points(&self) -> Vec<ComplexPoint> {
        let mut pts = Vec::with_capacity(self.len());
        pts.push(ComplexPoint::ORIGIN);
        for i in 1..=self.radial {
            let r = self.r_max * i as f64 / self.radial as f64;
            for j in 0..self.angular {
                pts.push(ComplexPoint::from_polar(r, self.angle(j)));
            }
        }
        pts
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.radial, self.angular)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("grid must look like RxA, got `{s}`"));
        let (r, a) = s.trim().split_once(['x', 'X', '×']).ok_or_else(bad)?;
        let grid = GridSpec::new(r.trim().parse().map_err(|_| bad())?, a.trim().parse().map_err(|_| bad())?);
        grid.validate()?;
        Ok(grid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub z_re: f64,
    pub z_im: f64,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
}

impl BoundRecord {
    pub fn new(z: ComplexPoint, measured: f64, bound: f64, lower: bool) -> Self {
        let margin = if lower { measured - bound } else { bound - measured };
        BoundRecord {
            z_re: z.re,
            z_im: z.im,
            measured,
            bound,
            margin,
        }
    }

    pub fn z(&self) -> ComplexPoint {
        ComplexPoint::new(self.z_re, self.z_im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub scenario: String,
    pub bound: BoundId,
    pub grid: String,
    pub records: Vec<BoundRecord>,
    pub min_margin: f64,
    pub sharp_points: Vec<ComplexPoint>,
    pub sharp_tol: f64,
    pub slack: f64,
    pub expected: ExpectedStatus,
}

impl BoundReport {
    fn assemble(s: &Scenario, bound: BoundId, grid: String, records: Vec<BoundRecord>, opts: &SweepOptions) -> Self {
        let min_margin = records.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        let sharp_points = records
            .iter()
            .filter(|r| r.margin.abs() < opts.sharp_tol)
            .map(|r| r.z())
            .collect();
        BoundReport {
            scenario: s.name.clone(),
            bound,
            grid,
            records,
            min_margin,
            sharp_points,
            sharp_tol: opts.sharp_tol,
            slack: opts.slack,
            expected: s.expectation(bound).map_or(ExpectedStatus::Holds, |e| e.status),
        }
    }

    pub fn passes(&self) -> bool {
        self.min_margin >= -self.slack
    }

    pub fn margin_at(&self, z: ComplexPoint) -> Option<f64> {
        self.records
            .iter()
            .find(|r| (r.z().c() - z.c()).norm() < 1e-12)
            .map(|r| r.margin)
    }

    /// Compares the report against the scenario's stated expectation.
    pub fn check_expectation(&self, s: &Scenario) -> Result<()> {
        let mismatch = |expected: String, observed: String| Error::HypothesisMismatch {
            scenario: self.scenario.clone(),
            bound: self.bound.to_string(),
            expected,
            observed,
        };
        let exp = s.expectation(self.bound);
        match exp.map(|e| e.status) {
            Some(ExpectedStatus::ViolatesHypothesis) => Ok(()),
            status => {
                if !self.passes() {
                    return Err(mismatch(
                        status.unwrap_or(ExpectedStatus::Holds).to_string(),
                        format!("min margin {:e} is below -{:e}", self.min_margin, self.slack),
                    ));
                }
                if let Some(e) = exp.filter(|e| e.status == ExpectedStatus::SharpAt) {
                    for p in &e.sharp_points {
                        if let Some(m) = self.margin_at(*p) {
                            if m.abs() >= self.sharp_tol {
                                return Err(mismatch(
                                    format!("sharp at {p}"),
                                    format!("margin {m:e} there"),
                                ));
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub slack: f64,
    pub sharp_tol: f64,
    pub execution: Execution,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            slack: DEFAULT_SLACK,
            sharp_tol: DEFAULT_SHARP_TOL,
            execution: Execution::default(),
        }
    }
}

/// Measures `bound` on `grid` and checks the result against the scenario's expectation.
pub fn sweep(s: &Scenario, bound: BoundId, grid: &GridSpec) -> Result<BoundReport> {
    sweep_with(s, bound, grid, &SweepOptions::default())
}

pub fn sweep_with(s: &Scenario, bound: BoundId, grid: &GridSpec, opts: &SweepOptions) -> Result<BoundReport> {
    let report = measure(s, bound, grid, opts)?;
    report.check_expectation(s)?;
    Ok(report)
}

/// Like [`sweep_with`] but returns the report even when margins are negative.
pub fn measure(s: &Scenario, bound: BoundId, grid: &GridSpec, opts: &SweepOptions) -> Result<BoundReport> {
    grid.validate()?;
    let records = match bound {
        BoundId::BoundarySchwarz => boundary_records(s, grid, opts)?,
        _ => {
            if matches!(bound, BoundId::HarmonicSchwarz | BoundId::HarmonicGradient) && !s.harmonic {
                return Err(Error::HypothesisViolation(format!(
                    "the {bound} bound needs a harmonic scenario; `{}` has a nonzero source",
                    s.name
                )));
            }
            let points = grid.points();
            let f0 = s.value(ComplexPoint::ORIGIN)?;
            map_slice(opts.execution, &points, |&z| point_record(s, bound, z, f0))
                .into_iter()
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(BoundReport::assemble(s, bound, grid.to_string(), records, opts))
}

fn point_record(s: &Scenario, bound: BoundId, z: ComplexPoint, f0: C64) -> Result<BoundRecord> {
    let x = z.modulus();
    let q = (1.0 - x * x) / (1.0 + x * x);
    let inputs = BoundInputs::new(s.p_norm(), s.g_norm(), x)?;
    let (measured, limit) = match bound {
        BoundId::Schwarz => {
            let measured = (s.value(z)? - q * s.psi.mean()).norm();
            (measured, bounds::schwarz_bound(&inputs))
        }
        BoundId::Gradient => (s.wirtinger(z)?.norm(), bounds::gradient_bound(&inputs)?),
        BoundId::HarmonicSchwarz => {
            let measured = (s.value(z)? - q * f0).norm();
            (measured, 4.0 * s.p_norm() / PI * x.atan())
        }
        BoundId::HarmonicGradient => (s.wirtinger(z)?.norm() * (1.0 - x * x), 4.0 * s.p_norm() / PI),
        BoundId::BoundarySchwarz => unreachable!("handled by boundary_records"),
    };
    Ok(BoundRecord::new(z, measured, limit, bound.is_lower_bound()))
}

/// Hypotheses of the boundary lower bound: `f(0) = 0`, `|f| ≤ 1` on the circle,
/// `‖g‖_∞ < 8/(3π)`.
pub fn boundary_hypotheses(s: &Scenario) -> Result<()> {
    let f0 = s.value(ComplexPoint::ORIGIN)?;
    if f0.norm() > 1e-8 {
        return Err(Error::HypothesisViolation(format!("f(0) = {f0} is not 0")));
    }
    if s.g_norm() >= bounds::boundary_schwarz_threshold() {
        return Err(Error::HypothesisViolation(format!(
            "‖g‖∞ = {} is not below 8/(3π)",
            s.g_norm()
        )));
    }
    let n = s.psi.samples().len();
    let sup = (0..n)
        .map(|j| s.boundary_value(2.0 * PI * j as f64 / n as f64).norm())
        .fold(0.0, f64::max);
    if sup > 1.0 + 1e-6 {
        return Err(Error::HypothesisViolation(format!(
            "f does not map into the disk: sup |f| on the circle is {sup}"
        )));
    }
    Ok(())
}

fn boundary_records(s: &Scenario, grid: &GridSpec, opts: &SweepOptions) -> Result<Vec<BoundRecord>> {
    boundary_hypotheses(s)?;
    let lower = bounds::boundary_schwarz_lower(s.g_norm())?;
    let angles: Vec<f64> = (0..grid.angular).map(|j| grid.angle(j)).collect();
    let candidates: Vec<f64> = angles
        .into_iter()
        .filter(|&t| s.radial_limit(t).map(|v| (v.norm() - 1.0).abs() < 1e-6).unwrap_or(false))
        .collect();
    if candidates.is_empty() {
        return Err(Error::HypothesisViolation(format!(
            "no grid boundary point of `{}` has |f| → 1",
            s.name
        )));
    }
    let ladder = default_ladder();
    map_slice(opts.execution, &candidates, |&t| {
        let q = boundary_quotient(s, t, &ladder)?;
        Ok(BoundRecord::new(ComplexPoint::from_polar(1.0, t), q, lower, true))
    })
    .into_iter()
    .collect()
}

/// Radii `1 − 2^{−j}`, `j = 4..=14`.
pub fn default_ladder() -> Vec<f64> {
    (4..=14).map(|j| 1.0 - 0.5f64.powi(j)).collect()
}

/// `min_r |f(ζ) − f(rζ)|/(1 − r)` over `r_list`, with `ζ = e^{iθ}`.
pub fn boundary_quotient(s: &Scenario, theta: f64, r_list: &[f64]) -> Result<f64> {
    if r_list.is_empty() {
        return Err(Error::InvalidParameter("empty radius list".into()));
    }
    let f_zeta = s.radial_limit(theta)?;
    let mut q = f64::INFINITY;
    for &r in r_list {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain {
                name: "boundary_quotient radius",
                value: r,
                domain: "(0, 1)",
            });
        }
        let v = s.value(ComplexPoint::from_polar(r, theta))?;
        q = q.min((f_zeta - v).norm() / (1.0 - r));
    }
    Ok(q)
}

/// Radius of the largest disk found inside `f(𝔻)`: candidate centres on a
/// `n_centers × n_centers` grid of the image's bounding box, kept when the sampled
/// boundary curve winds around them. Biased low by the grid spacing.
pub fn inscribed_disk_radius(s: &Scenario, n_centers: usize, n_boundary: usize, exec: Execution) -> f64 {
    let curve: Vec<C64> = (0..n_boundary)
        .map(|j| s.boundary_value(2.0 * PI * j as f64 / n_boundary as f64))
        .collect();
    let (mut lo, mut hi) = (C64::new(f64::INFINITY, f64::INFINITY), C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in &curve {
        lo = C64::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = C64::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    let n = n_centers.max(1);
    let radii = map_indexed(exec, n * n, |k| {
        let (i, j) = (k / n, k % n);
        let c = C64::new(
            lo.re + (hi.re - lo.re) * (i as f64 + 0.5) / n as f64,
            lo.im + (hi.im - lo.im) * (j as f64 + 0.5) / n as f64,
        );
        if winding_number(&curve, c) == 0 {
            0.0
        } else {
            distance_to_polygon(&curve, c)
        }
    });
    radii.into_iter().fold(0.0, f64::max)
}

fn winding_number(curve: &[C64], c: C64) -> i64 {
    let n = curve.len();
    let mut total = 0.0;
    for j in 0..n {
        let a = curve[j] - c;
        let b = curve[(j + 1) % n] - c;
        total += (b / a).arg();
    }
    (total / (2.0 * PI)).round() as i64
}

fn distance_to_polygon(curve: &[C64], c: C64) -> f64 {
    let n = curve.len();
    (0..n)
        .map(|j| {
            let (a, b) = (curve[j], curve[(j + 1) % n]);
            let ab = b - a;
            let t = if ab.norm_sqr() > 0.0 {
                (((c - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0)
            } else {
                0.0
            };
            (a + ab * t - c).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Uniform random point of the closed disk of radius `rho`.
pub fn random_point(rng: &mut impl Rng, rho: f64) -> ComplexPoint {
    ComplexPoint::from_polar(rho * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>())
}

/// Smallest and largest `|f(z₁) − f(z₂)|/|z₁ − z₂|` over random pairs in `|z| ≤ rho`.
pub fn bilipschitz_probe(s: &Scenario, rho: f64, n_pairs: usize, seed: u64, exec: Execution) -> Result<(f64, f64)> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain {
            name: "bilipschitz_probe radius",
            value: rho,
            domain: "(0, 1)",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n_pairs);
    while pairs.len() < n_pairs {
        let (a, b) = (random_point(&mut rng, rho), random_point(&mut rng, rho));
        if (a.c() - b.c()).norm() > 1e-9 {
            pairs.push((a, b));
        }
    }
    let ratios = map_slice(exec, &pairs, |&(a, b)| {
        Ok((s.value(a)? - s.value(b)?).norm() / (a.c() - b.c()).norm())
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    Ok((min, max))
}

/// Largest radius on a 0.05 ladder below which the Jacobian keeps one sign on a
/// polar grid and no sampled pair collapses.
pub fn empirical_univalence_radius(s: &Scenario, exec: Execution) -> Result<f64> {
    let j0 = s.wirtinger(ComplexPoint::ORIGIN)?.jacobian();
    let mut best = 0.0;
    for step in 1..=20 {
        let r = (0.05 * step as f64).min(0.999);
        let grid = GridSpec::new(12, 48).with_r_max(r);
        let jac = map_slice(exec, &grid.points(), |&z| s.wirtinger(z).map(|d| d.jacobian()))
            .into_iter()
            .collect::<Result<Vec<f64>>>()?;
        if jac.iter().any(|&j| j * j0 <= 0.0) {
            break;
        }
        let (min_ratio, _) = bilipschitz_probe(s, r, 500, step as u64, exec)?;
        if min_ratio < 1e-6 {
            break;
        }
        best = r;
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRow {
    pub k: usize,
    pub jacobian_at_origin: f64,
    pub value_at_origin: f64,
    pub poisson_jacobian_at_origin: f64,
    pub poisson_value_at_origin: f64,
    pub poisson_residual: f64,
    pub inscribed_radius: f64,
    pub radius_limit: f64,
}

impl FailureRow {
    pub fn passes(&self) -> bool {
        (self.jacobian_at_origin - 1.0).abs() <= 1e-10
            && (self.poisson_jacobian_at_origin - 1.0).abs() <= 1e-10
            && self.value_at_origin == 0.0
            && self.poisson_value_at_origin == 0.0
            && self.inscribed_radius <= self.radius_limit
    }
}

/// Normalized stretch families `k = 1..=k_max`: `J(0) = 1`, `f(0) = 0`, yet the
/// image of the harmonic family holds no disk larger than `1/k`.
pub fn landau_failure_demo(k_max: usize, exec: Execution) -> Result<Vec<FailureRow>> {
    if k_max < 2 {
        return Err(Error::InvalidParameter(format!("k_max must be at least 2, got {k_max}")));
    }
    (1..=k_max)
        .map(|k| {
            let harmonic = builtin(&format!("stretch-harmonic:{k}"))?;
            let poisson = builtin(&format!("stretch-poisson:{k}"))?;
            let spots = [ComplexPoint::new(0.1, 0.2), ComplexPoint::new(-0.5, 0.3), ComplexPoint::new(0.4, -0.6)];
            let residual = spots
                .iter()
                .map(|&z| poisson.pde_residual(z, 1e-3))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok(FailureRow {
                k,
                jacobian_at_origin: harmonic.wirtinger(ComplexPoint::ORIGIN)?.jacobian(),
                value_at_origin: harmonic.value(ComplexPoint::ORIGIN)?.norm(),
                poisson_jacobian_at_origin: poisson.wirtinger(ComplexPoint::ORIGIN)?.jacobian(),
                poisson_value_at_origin: poisson.value(ComplexPoint::ORIGIN)?.norm(),
                poisson_residual: residual,
                inscribed_radius: inscribed_disk_radius(&harmonic, 64, 1024, exec),
                radius_limit: 1.0 / k as f64 + 0.05,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parse_complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.3-0.2i").unwrap(), C64::new(0.3, -0.2));
        assert_eq!(parse_complex("1e-1+2e-1i").unwrap(), C64::new(0.1, 0.2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn builtin_registry() {
        for name in ["sharp-quadratic", "sharp-quadratic:2", "stretch-poisson(3)", "stretch-harmonic:5", "colonna-extremal:1,1,0", "identity", "monomial:2", "boundary-poisson:0.1", "landau-quadratic:0.25", "colonna-extremal:2,-1,0.3-0.2i"] {
            builtin(name).unwrap();
        }
        assert!(matches!(builtin("nope"), Err(Error::UnknownScenario(_))));
        assert!(builtin("colonna-extremal:1,2,0").is_err());
        assert!(builtin("sharp-quadratic:-1").is_err());
    }

    #[test]
    fn explicit_scenarios_solve_their_equation() {
        let names = ["sharp-quadratic:1.5", "stretch-poisson:3", "stretch-harmonic:2", "colonna-extremal:1,1,0.3+0.1i", "identity", "monomial:3", "boundary-poisson:0.1", "landau-quadratic:0.5"];
        let spots = [ComplexPoint::new(0.1, 0.2), ComplexPoint::new(-0.4, 0.5), ComplexPoint::new(0.6, -0.3)];
        for name in names {
            let s = builtin(name).unwrap();
            for z in spots {
                assert!(s.pde_residual(z, 1e-3).unwrap() < 1e-5, "{name} at {z}");
                let exact = s.wirtinger(z).unwrap();
                let numeric = kernels::wirtinger_numeric(|w| s.value(w.into()).unwrap(), z, 1e-5).unwrap();
                assert!((exact.fz - numeric.fz).norm() < 1e-7, "{name} fz at {z}");
                assert!((exact.fzbar - numeric.fzbar).norm() < 1e-7, "{name} fzbar at {z}");
            }
        }
    }

    #[test]
    fn explicit_matches_solver_representation() {
        let s = builtin("stretch-poisson:2").unwrap();
        let solved = Scenario::from_data("solved", s.g.clone(), s.psi.clone()).unwrap();
        for z in [ComplexPoint::new(0.2, 0.1), ComplexPoint::new(-0.7, 0.4)] {
            assert!((s.value(z).unwrap() - solved.value(z).unwrap()).norm() < 1e-12);
            let (a, b) = (s.wirtinger(z).unwrap(), solved.wirtinger(z).unwrap());
            assert!((a.fz - b.fz).norm() < 1e-10 && (a.fzbar - b.fzbar).norm() < 1e-10);
        }
    }

    #[test]
    fn grid_spec_parsing() {
        let g: GridSpec = "16x16".parse().unwrap();
        assert_eq!(g.len(), 257);
        assert_eq!(g.points()[0], ComplexPoint::ORIGIN);
        assert!("16".parse::<GridSpec>().is_err());
        assert!("0x4".parse::<GridSpec>().is_err());
    }

    #[test]
    fn sweep_examples() {
        let grid = GridSpec::new(16, 16);
        let r = sweep(&builtin("sharp-quadratic:1").unwrap(), BoundId::Schwarz, &grid).unwrap();
        assert!(r.min_margin >= -1e-8);
        assert!(r.margin_at(ComplexPoint::ORIGIN).unwrap().abs() < 1e-12);
        assert!(r.sharp_points.contains(&ComplexPoint::ORIGIN));

        let r = sweep(&builtin("identity").unwrap(), BoundId::Gradient, &grid).unwrap();
        assert!(r.records.iter().all(|x| x.margin >= 0.0));

        let line = GridSpec::new(40, 1).with_r_max(0.99);
        let r = sweep(&builtin("colonna-extremal:1,1,0").unwrap(), BoundId::HarmonicGradient, &line).unwrap();
        assert!(r.records.iter().all(|x| x.margin.abs() < 1e-12));
    }

    #[test]
    fn boundary_quotient_examples() {
        let ladder: Vec<f64> = (1..=4).map(|j| 1.0 - 10f64.powi(-j)).collect();
        let q = boundary_quotient(&builtin("identity").unwrap(), 0.0, &ladder).unwrap();
        // f(ζ) is read at 1 − 1e-8, so the quotient is 1 − 1e-8/(1 − r).
        assert_abs_diff_eq!(q, 1.0 - 1e-8 / 1e-4, epsilon = 1e-9);
        let q = boundary_quotient(&builtin("monomial:2").unwrap(), 0.0, &[1.0 - 1e-4]).unwrap();
        assert_abs_diff_eq!(q, 2.0, epsilon = 1e-3);
        let q = boundary_quotient(&builtin("colonna-extremal:1,1,0").unwrap(), PI / 2.0, &[1.0 - 1e-4]).unwrap();
        assert!((q - 2.0 / PI).abs() < 5e-2);
        assert!(boundary_hypotheses(&builtin("stretch-harmonic:5").unwrap()).is_err());
        assert!(boundary_hypotheses(&builtin("boundary-poisson:0.1").unwrap()).is_ok());
        assert!(matches!(
            sweep(&builtin("stretch-harmonic:5").unwrap(), BoundId::BoundarySchwarz, &GridSpec::new(4, 16)),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn inscribed_radius_examples() {
        let exec = Execution::default();
        let r2 = inscribed_disk_radius(&builtin("stretch-harmonic:2").unwrap(), 64, 1024, exec);
        assert!((r2 - 0.5).abs() < 0.02, "{r2}");
        let r5 = inscribed_disk_radius(&builtin("stretch-harmonic:5").unwrap(), 64, 1024, exec);
        assert!((r5 - 0.2).abs() < 0.02, "{r5}");
        let r1 = inscribed_disk_radius(&builtin("identity").unwrap(), 64, 1024, exec);
        assert!((r1 - 1.0).abs() < 0.03, "{r1}");
    }

    #[test]
    fn bilipschitz_identity() {
        let (lo, hi) = bilipschitz_probe(&builtin("identity").unwrap(), 0.5, 1000, 3, Execution::default()).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn failure_demo_rows() {
        let rows = landau_failure_demo(5, Execution::default()).unwrap();
        assert!(rows.iter().all(FailureRow::passes));
        assert!(rows.windows(2).all(|w| w[1].inscribed_radius < w[0].inscribed_radius));
        assert!(rows.iter().all(|r| r.poisson_residual < 1e-5));
    }

    #[test]
    fn landau_radius_below_observed_univalence() {
        for name in ["stretch-harmonic:2", "stretch-poisson:2", "identity"] {
            let s = builtin(name).unwrap();
            let p = s.landau_parameters().unwrap();
            let r0 = crate::landau::landau_radius(&p, 1e-12).unwrap().r0;
            assert!(r0 <= empirical_univalence_radius(&s, Execution::default()).unwrap());
        }
    }
}
