//! Integration rules for the unit circle and the unit disk.
//!
//! The disk rules are products of a radial rule on `(0, 1)` and a uniform
//! angular rule. Singular integrands are handled in polar coordinates about
//! the singular point `c`: along the ray `c + ρ e^{iθ}` the radius runs over
//! `[0, R(θ)]`, where `R(θ)` is the distance to the unit circle, and the
//! factor `ρ` of the area element either cancels an inverse-distance weight or
//! combines with `log(1/ρ)` into the weight of the log-weighted radial rule.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, pairwise_sum, Execution};
use crate::kernels::{ComplexPoint, C64};

pub const DEFAULT_RADIAL_NODES: usize = 96;
pub const DEFAULT_ANGULAR_NODES: usize = 256;
pub const DEFAULT_TOL: f64 = 1e-8;

/// A rule `Σ w_k f(x_k)` on `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialRule {
    /// Gauss–Legendre rule on `(0, 1)` (weight 1).
    pub fn gauss_legendre(n: usize) -> Self {
        let n = NonZeroUsize::new(n.max(1)).expect("n >= 1");
        let mut pairs: Vec<(f64, f64)> = GaussLegendre::new(n)
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        RadialRule { nodes, weights }
    }

    /// Gauss rule for the weight `s·log(1/s)` on `(0, 1)`.
    ///
    /// The recurrence coefficients come from a discretized Stieltjes procedure
    /// over a geometrically graded composite Gauss–Legendre measure, then the
    /// nodes and weights from the eigen-decomposition of the Jacobi matrix.
    pub fn log_weighted(n: usize) -> Self {
        let n = n.max(1);
        let (xs, ws) = graded_log_measure(n + 24, 64);

        let mut alpha = vec![0.0; n];
        let mut beta = vec![0.0; n];
        let mut p_prev = vec![0.0; xs.len()];
        let mut p = vec![1.0; xs.len()];
        let mut norm = ws.iter().sum::<f64>();
        let mu0 = norm;
        for k in 0..n {
            let xpp: f64 = xs.iter().zip(&ws).zip(&p).map(|((x, w), pk)| w * x * pk * pk).sum();
            alpha[k] = xpp / norm;
            let b = if k > 0 { beta[k] } else { 0.0 };
            let next: Vec<f64> = xs
                .iter()
                .zip(&p)
                .zip(&p_prev)
                .map(|((x, pk), pm)| (x - alpha[k]) * pk - b * pm)
                .collect();
            let next_norm: f64 = ws.iter().zip(&next).map(|(w, q)| w * q * q).sum();
            if k + 1 < n {
                beta[k + 1] = next_norm / norm;
            }
            p_prev = std::mem::replace(&mut p, next);
            norm = next_norm;
        }

        let jacobi = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[j].sqrt()
            } else if j + 1 == i {
                beta[i].sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        RadialRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f(x) dx` for the weight-1 rule, mapped affinely onto `[a, b]`.
    pub fn integrate_interval<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let h = b - a;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * f(a + h * s))
            .sum::<f64>()
            * h
    }
}

/// Composite Gauss–Legendre discretization of `s·log(1/s) ds` on dyadic panels.
fn graded_log_measure(per_panel: usize, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let base = RadialRule::gauss_legendre(per_panel);
    let mut xs = Vec::with_capacity(per_panel * panels);
    let mut ws = Vec::with_capacity(per_panel * panels);
    for k in 0..panels {
        let hi = 0.5f64.powi(k as i32);
        let lo = 0.5 * hi;
        for (&s, &w) in base.nodes.iter().zip(&base.weights) {
            let x = lo + (hi - lo) * s;
            xs.push(x);
            ws.push((hi - lo) * w * x * (1.0 / x).ln());
        }
    }
    (xs, ws)
}

/// Uniform trapezoid rule on `[0, 2π)`: nodes `2πj/n`, weights `2π/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRule {
    pub n_nodes: usize,
}

impl CircleRule {
    pub fn new(n_nodes: usize) -> Result<Self> {
        if n_nodes == 0 {
            return Err(Error::InvalidParameter("circle rule needs at least one node".into()));
        }
        Ok(CircleRule { n_nodes })
    }

    pub fn node(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_nodes as f64
    }

    pub fn weight(&self) -> f64 {
        2.0 * PI / self.n_nodes as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes).map(|j| self.node(j))
    }
}

/// `∫_0^{2π} h(t) dt` by the trapezoid rule.
pub fn integrate_circle<H>(rule: &CircleRule, h: H) -> C64
where
    H: Fn(f64) -> C64,
{
    let values: Vec<C64> = rule.nodes().map(h).collect();
    pairwise_sum(&values) * rule.weight()
}

/// Singular weight used by [`integrate_disk_singular`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularKind {
    /// `1 / |w - c|`
    InverseDistance,
    /// `log(1 / |w - c|)`
    GreenLog,
    /// No weight; polar coordinates about `c` only.
    Regular,
}

/// Product rule on the disk with an optional adapted center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskRule {
    pub radial: RadialRule,
    pub radial_log: RadialRule,
    pub angular_n: usize,
    pub center: Option<ComplexPoint>,
    #[serde(default)]
    pub execution: Execution,
}

impl DiskRule {
    pub fn new(radial_n: usize, angular_n: usize) -> Result<Self> {
        if radial_n == 0 || angular_n == 0 {
            return Err(Error::InvalidParameter(format!(
                "disk rule sizes must be positive, got ({radial_n}, {angular_n})"
            )));
        }
        Ok(DiskRule {
            radial: RadialRule::gauss_legendre(radial_n),
            radial_log: RadialRule::log_weighted(radial_n),
            angular_n,
            center: None,
            execution: Execution::default(),
        })
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// Records a preferred singular center.
    pub fn centered_at(mut self, c: ComplexPoint) -> Self {
        self.center = Some(c);
        self
    }

    /// Angular nodes sit at half-steps so no ray points along a coordinate axis.
    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * (j as f64 + 0.5) / self.angular_n as f64
    }

    /// Origin-centred `(point, weight)` pairs: `Σ weight·h(point) ≈ ∫_D h dA`.
    pub fn nodes(&self) -> Vec<(C64, f64)> {
        let dtheta = 2.0 * PI / self.angular_n as f64;
        let mut out = Vec::with_capacity(self.radial.len() * self.angular_n);
        for j in 0..self.angular_n {
            let e = C64::from_polar(1.0, self.angle(j));
            for (&r, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
                out.push((e * r, w * r * dtheta));
            }
        }
        out
    }

    /// Materialized nodes for a singular center, such that
    /// `Σ weight·h(point) ≈ ∫_D h(w) s(w) dA(w)` with `s` given by `kind`.
    pub fn singular_nodes(&self, c: ComplexPoint, kind: SingularKind) -> Result<Vec<(C64, f64)>> {
        check_center(c)?;
        let mut out = Vec::new();
        for j in 0..self.angular_n {
            self.ray_nodes(c.c(), j, kind, |w, weight| out.push((w, weight)));
        }
        Ok(out)
    }

    fn ray_nodes<E: FnMut(C64, f64)>(&self, c: C64, j: usize, kind: SingularKind, mut emit: E) {
        let dtheta = 2.0 * PI / self.angular_n as f64;
        let e = C64::from_polar(1.0, self.angle(j));
        let reach = ray_to_circle(c, e);
        match kind {
            SingularKind::InverseDistance => {
                for (&s, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
                    emit(c + e * (reach * s), w * reach * dtheta);
                }
            }
            SingularKind::Regular => {
                for (&s, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
                    emit(c + e * (reach * s), w * s * reach * reach * dtheta);
                }
            }
            SingularKind::GreenLog => {
                let r2 = reach * reach;
                let log_term = r2 * (1.0 / reach).ln();
                if log_term != 0.0 {
                    for (&s, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
                        emit(c + e * (reach * s), w * s * log_term * dtheta);
                    }
                }
                for (&s, &w) in self.radial_log.nodes.iter().zip(&self.radial_log.weights) {
                    emit(c + e * (reach * s), w * r2 * dtheta);
                }
            }
        }
    }
}

fn check_center(c: ComplexPoint) -> Result<()> {
    if c.is_interior() {
        Ok(())
    } else {
        Err(Error::CenterOutsideDisk { modulus: c.modulus() })
    }
}

/// Distance from interior `c` to the unit circle along the unit direction `e`.
#[inline]
pub(crate) fn ray_to_circle(c: C64, e: C64) -> f64 {
    let b = (c.conj() * e).re;
    let q = (1.0 - c.norm()) * (1.0 + c.norm());
    let root = (b * b + q).sqrt();
    if b > 0.0 {
        q / (b + root)
    } else {
        root - b
    }
}

/// `∫_D h dA` with the origin-centred product rule.
pub fn integrate_disk<H>(rule: &DiskRule, h: H) -> C64
where
    H: Fn(C64) -> C64 + Sync + Send,
{
    integrate_disk_singular(rule, h, ComplexPoint::ORIGIN, SingularKind::Regular)
        .expect("origin is interior")
}

/// `∫_D h(w) s(w) dA(w)` where `s` is the singular weight selected by `kind`,
/// computed in polar coordinates about `c`.
pub fn integrate_disk_singular<H>(rule: &DiskRule, h: H, c: ComplexPoint, kind: SingularKind) -> Result<C64>
where
    H: Fn(C64) -> C64 + Sync + Send,
{
    check_center(c)?;
    let center = c.c();
    let lines = exec::map_indexed(rule.execution, rule.angular_n, |j| {
        let mut acc = C64::new(0.0, 0.0);
        rule.ray_nodes(center, j, kind, |w, weight| acc += h(w) * weight);
        acc
    });
    Ok(pairwise_sum(&lines))
}

/// Builds a circle rule and a disk rule and validates them on closed-form probes.
///
/// Probes: `∫_D 1 = π`, `∫_D |w|² = π/2`, `∫_D log(1/|w|) = π/2` (log-weighted
/// rule), `∫_D log(1/|w - ½|) = 3π/8` (off-centre log rule) and
/// `∫_0^{2π} log|1 - ¼e^{-it}| dt = 0` (circle rule).
pub fn build_rules(radial_n: usize, angular_n: usize, tol: f64) -> Result<(CircleRule, DiskRule)> {
    if radial_n < 4 || angular_n < 4 {
        return Err(Error::InvalidParameter(format!(
            "rule sizes must be at least 4, got ({radial_n}, {angular_n})"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let circle = CircleRule::new(angular_n)?;
    let disk = DiskRule::new(radial_n, angular_n)?;
    for (probe, error) in validation_errors(&circle, &disk) {
        if !(error <= tol) {
            return Err(Error::QuadratureValidation { probe, error, tol });
        }
    }
    Ok((circle, disk))
}

/// Absolute errors of the rules on each closed-form probe.
pub fn validation_errors(circle: &CircleRule, disk: &DiskRule) -> Vec<(&'static str, f64)> {
    let one = |_: C64| C64::new(1.0, 0.0);
    let area = integrate_disk(disk, one);
    let second = integrate_disk(disk, |w| C64::new(w.norm_sqr(), 0.0));
    let log_origin = integrate_disk_singular(disk, one, ComplexPoint::ORIGIN, SingularKind::GreenLog)
        .expect("origin is interior");
    let log_offset = integrate_disk_singular(disk, one, ComplexPoint::new(0.5, 0.0), SingularKind::GreenLog)
        .expect("0.5 is interior");
    let circle_log = integrate_circle(circle, |t| {
        C64::new((1.0 - C64::from_polar(0.25, -t)).norm().ln(), 0.0)
    });
    vec![
        ("disk-area", (area - PI).norm()),
        ("disk-second-moment", (second - PI / 2.0).norm()),
        ("disk-log-origin", (log_origin - PI / 2.0).norm()),
        ("disk-log-offset", (log_offset - 3.0 * PI / 8.0).norm()),
        ("circle-log", circle_log.norm()),
    ]
}

/// Result of a tanh-sinh integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TanhSinhEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Tanh-sinh (double exponential) quadrature on `[a, b]`.
///
/// The integrand receives `(x, distance to nearest endpoint)` so that
/// endpoint singularities can be evaluated without cancellation. Step
/// halving stops once successive estimates agree within `tol`.
pub fn tanh_sinh<F>(a: f64, b: f64, tol: f64, f: F) -> TanhSinhEstimate
where
    F: Fn(f64, f64) -> f64,
{
    const T_MAX: f64 = 4.0;
    const MAX_LEVEL: u32 = 12;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut evaluations = 0usize;

    let mut term = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let cosh_u = u.cosh();
        let weight = 0.5 * PI * t.cosh() / (cosh_u * cosh_u);
        // 1 - tanh|u| = 2 / (1 + e^{2|u|})
        let gap = half * 2.0 / (1.0 + (2.0 * u.abs()).exp());
        if gap == 0.0 || weight == 0.0 {
            return 0.0;
        }
        let x = if u >= 0.0 { b - gap } else { a + gap };
        let x = if u == 0.0 { mid } else { x };
        evaluations += 1;
        half * weight * f(x, gap.min(half))
    };

    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += term(t) + term(-t);
        k += 1;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for _ in 1..MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            sum += term(t) + term(-t);
            k += 2;
        }
        let next = sum * h;
        error = (next - estimate).abs();
        estimate = next;
        if error <= tol * estimate.abs().max(1.0) {
            break;
        }
    }
    TanhSinhEstimate {
        value: estimate,
        error,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        let rule = RadialRule::gauss_legendre(10);
        assert_abs_diff_eq!(rule.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        for k in 0..20 {
            let v: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(k)).sum();
            assert_abs_diff_eq!(v, 1.0 / (k as f64 + 1.0), epsilon = 1e-15);
        }
    }

    #[test]
    fn log_weighted_rule_moments() {
        for n in [4, 16, 96] {
            let rule = RadialRule::log_weighted(n);
            assert!(rule.nodes.iter().all(|&x| x > 0.0 && x < 1.0));
            for k in 0..(2 * n as i32) {
                let v: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(k)).sum();
                let exact = 1.0 / ((k as f64 + 2.0) * (k as f64 + 2.0));
                assert!((v / exact - 1.0).abs() < 1e-12, "n={n} k={k} rel={}", v / exact - 1.0);
            }
        }
    }

    #[test]
    fn circle_examples() {
        let rule = CircleRule::new(64).unwrap();
        assert_abs_diff_eq!(integrate_circle(&rule, |_| C64::new(1.0, 0.0)).re, 2.0 * PI, epsilon = 1e-14);
        assert!(integrate_circle(&rule, |t| C64::from_polar(1.0, t)).norm() < 1e-14);
        let v = integrate_circle(&rule, |t| C64::new((1.0 - C64::from_polar(0.5, -t)).norm().ln(), 0.0));
        assert!(v.norm() < 1e-15);
        let weights: f64 = (0..rule.n_nodes).map(|_| rule.weight()).sum();
        assert_abs_diff_eq!(weights, 2.0 * PI, epsilon = 1e-13);
    }

    #[test]
    fn circle_orthogonality_below_node_count() {
        let rule = CircleRule::new(16).unwrap();
        for k in 1..16 {
            let v = integrate_circle(&rule, |t| C64::from_polar(1.0, k as f64 * t));
            assert!(v.norm() < 1e-13, "k={k}");
        }
        let aliased = integrate_circle(&rule, |t| C64::from_polar(1.0, 16.0 * t));
        assert_abs_diff_eq!(aliased.re, 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn disk_examples() {
        let rule = DiskRule::new(32, 64).unwrap();
        assert_abs_diff_eq!(integrate_disk(&rule, |_| C64::new(1.0, 0.0)).re, PI, epsilon = 1e-13);
        assert_abs_diff_eq!(integrate_disk(&rule, |w| C64::new(w.norm_sqr(), 0.0)).re, PI / 2.0, epsilon = 1e-13);
        // Plain Gauss–Legendre converges only algebraically on r·log(1/r).
        let plain_log = integrate_disk(&rule, |w| C64::new((1.0 / w.norm()).ln(), 0.0)).re;
        assert!((plain_log - PI / 2.0).abs() < 1e-5);
        assert!(rule.nodes().iter().all(|(w, _)| w.norm() < 1.0));
    }

    #[test]
    fn singular_examples() {
        let rule = DiskRule::new(32, 64).unwrap();
        let one = |_: C64| C64::new(1.0, 0.0);
        let inv = integrate_disk_singular(&rule, one, ComplexPoint::ORIGIN, SingularKind::InverseDistance).unwrap();
        assert_abs_diff_eq!(inv.re, 2.0 * PI, epsilon = 1e-13);
        let log = integrate_disk_singular(&rule, one, ComplexPoint::ORIGIN, SingularKind::GreenLog).unwrap();
        assert_abs_diff_eq!(log.re, PI / 2.0, epsilon = 1e-14);
        for c in [ComplexPoint::new(0.5, 0.0), ComplexPoint::new(-0.3, 0.8)] {
            let exact = PI * (1.0 - c.modulus().powi(2)) / 2.0;
            let v = integrate_disk_singular(&rule, one, c, SingularKind::GreenLog).unwrap();
            assert_abs_diff_eq!(v.re, exact, epsilon = 1e-12);
            let area = integrate_disk_singular(&rule, one, c, SingularKind::Regular).unwrap();
            assert_abs_diff_eq!(area.re, PI, epsilon = 1e-12);
        }
        assert!(matches!(
            integrate_disk_singular(&rule, one, ComplexPoint::new(1.0, 0.0), SingularKind::GreenLog),
            Err(Error::CenterOutsideDisk { .. })
        ));
    }

    #[test]
    fn inverse_distance_with_second_singularity() {
        // ∫_D dA / (|w| |w - 1/2|): the extra 1/|w| is unbounded on one ray,
        // so the polar rule about c converges slowly.
        let rule = DiskRule::new(DEFAULT_RADIAL_NODES, DEFAULT_ANGULAR_NODES).unwrap();
        let v = integrate_disk_singular(
            &rule,
            |w| C64::new(1.0 / w.norm(), 0.0),
            ComplexPoint::new(0.5, 0.0),
            SingularKind::InverseDistance,
        )
        .unwrap();
        assert!((v.re - 12.853_488_735_394_409).abs() < 5e-3, "{}", v.re);
    }

    #[test]
    fn materialized_nodes_match_streaming() {
        let rule = DiskRule::new(12, 24).unwrap();
        let h = |w: C64| C64::new(1.0 + w.re * w.im, w.norm_sqr());
        let c = ComplexPoint::new(0.2, -0.6);
        for kind in [SingularKind::InverseDistance, SingularKind::GreenLog, SingularKind::Regular] {
            let stream = integrate_disk_singular(&rule, h, c, kind).unwrap();
            let nodes = rule.singular_nodes(c, kind).unwrap();
            let direct: C64 = nodes.iter().map(|&(w, wt)| h(w) * wt).sum();
            assert!((stream - direct).norm() < 1e-12);
            assert!(nodes.iter().all(|(w, _)| w.norm() < 1.0 + 1e-15));
        }
    }

    #[test]
    fn folded_weights_agree_with_singular_kinds() {
        let rule = DiskRule::new(48, 96).unwrap();
        let p = |w: C64| C64::new(1.0 + 0.3 * w.re, 0.2 * w.im * w.im);
        let c = ComplexPoint::ORIGIN;
        let folded = integrate_disk(&rule, |w| p(w) * w.norm());
        let singular = integrate_disk_singular(&rule, |w| p(w) * w.norm_sqr(), c, SingularKind::InverseDistance).unwrap();
        assert!((folded - singular).norm() < 1e-10);
    }

    #[test]
    fn build_rules_examples() {
        assert!(build_rules(64, 128, 1e-8).is_ok());
        assert!(build_rules(4, 4, 1e-1).is_ok());
        assert!(matches!(build_rules(4, 4, 1e-12), Err(Error::QuadratureValidation { .. })));
        assert!(matches!(build_rules(3, 8, 1e-1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn validation_error_decreases_under_refinement() {
        let mut prev = f64::INFINITY;
        for (nr, na) in [(4, 4), (8, 8), (16, 16), (32, 32), (64, 64)] {
            let circle = CircleRule::new(na).unwrap();
            let disk = DiskRule::new(nr, na).unwrap();
            let worst = validation_errors(&circle, &disk)
                .into_iter()
                .map(|(_, e)| e)
                .fold(0.0, f64::max);
            assert!(worst <= prev.max(1e-12), "{nr}x{na}: {worst} vs {prev}");
            prev = worst;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let est = tanh_sinh(0.0, 1.0, 1e-14, |x, _| x.sqrt());
        assert_abs_diff_eq!(est.value, 2.0 / 3.0, epsilon = 1e-13);
        let est = tanh_sinh(0.0, 1.0, 1e-14, |x, _| x.ln());
        assert_abs_diff_eq!(est.value, -1.0, epsilon = 1e-12);
        let est = tanh_sinh(0.0, 1.0, 1e-14, |x, _| 1.0 / x.sqrt());
        assert_abs_diff_eq!(est.value, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn parallel_and_sequential_bitwise_equal() {
        let seq = DiskRule::new(24, 48).unwrap().with_execution(Execution::Sequential);
        let par = seq.clone().with_execution(Execution::Parallel);
        let h = |w: C64| C64::new((1.0 + w.re).ln(), w.im.sin());
        let c = ComplexPoint::new(0.1, 0.7);
        let a = integrate_disk_singular(&seq, h, c, SingularKind::GreenLog).unwrap();
        let b = integrate_disk_singular(&par, h, c, SingularKind::GreenLog).unwrap();
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
