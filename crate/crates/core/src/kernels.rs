//! Closed-form objects on the unit disk: the Green function, the Poisson
//! kernel, disk automorphisms and Wirtinger derivatives of explicit maps.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Guard below which `|z - w|` is treated as a log singularity.
pub const COINCIDENT_GUARD: f64 = 1e-300;

/// Tolerance on `|z| = 1` for boundary points.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Default central-difference step for [`wirtinger_numeric`].
pub const DEFAULT_WIRTINGER_STEP: f64 = 1e-5;

/// A point of the closed unit disk.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub const ORIGIN: ComplexPoint = ComplexPoint { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        ComplexPoint { re, im }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        C64::from_polar(r, theta).into()
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn c(self) -> C64 {
        C64::new(self.re, self.im)
    }

    pub fn is_interior(self) -> bool {
        self.modulus() < 1.0
    }

    pub fn is_boundary(self) -> bool {
        (self.modulus() - 1.0).abs() <= BOUNDARY_TOL
    }

    pub fn in_closed_disk(self) -> bool {
        self.modulus() <= 1.0 + BOUNDARY_TOL
    }
}

impl From<C64> for ComplexPoint {
    fn from(z: C64) -> Self {
        ComplexPoint::new(z.re, z.im)
    }
}

impl From<ComplexPoint> for C64 {
    fn from(p: ComplexPoint) -> Self {
        p.c()
    }
}

impl From<f64> for ComplexPoint {
    fn from(x: f64) -> Self {
        ComplexPoint::new(x, 0.0)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// The pair `(f_z, f_zbar)` describing the real differential of a planar map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WirtingerDerivatives {
    pub fz: C64,
    pub fzbar: C64,
}

impl WirtingerDerivatives {
    pub fn new(fz: C64, fzbar: C64) -> Self {
        WirtingerDerivatives { fz, fzbar }
    }

    /// Operator norm `|f_z| + |f_zbar|`.
    pub fn norm(&self) -> f64 {
        self.fz.norm() + self.fzbar.norm()
    }

    /// Smallest stretch `||f_z| - |f_zbar||`.
    pub fn lambda(&self) -> f64 {
        (self.fz.norm() - self.fzbar.norm()).abs()
    }

    pub fn jacobian(&self) -> f64 {
        self.fz.norm_sqr() - self.fzbar.norm_sqr()
    }

    /// Real partials `(f_x, f_y)`.
    pub fn partials(&self) -> (C64, C64) {
        let fx = self.fz + self.fzbar;
        let fy = C64::i() * (self.fz - self.fzbar);
        (fx, fy)
    }
}

impl std::ops::Sub for WirtingerDerivatives {
    type Output = WirtingerDerivatives;

    fn sub(self, rhs: Self) -> Self {
        WirtingerDerivatives::new(self.fz - rhs.fz, self.fzbar - rhs.fzbar)
    }
}

fn check_closed(p: ComplexPoint, context: &'static str) -> Result<()> {
    if p.in_closed_disk() {
        Ok(())
    } else {
        Err(Error::OutsideDisk {
            modulus: p.modulus(),
            context,
        })
    }
}

fn check_open(p: ComplexPoint, context: &'static str) -> Result<()> {
    if p.is_interior() {
        Ok(())
    } else {
        Err(Error::OutsideDisk {
            modulus: p.modulus(),
            context,
        })
    }
}

/// Green function of the disk, `log|1 - z w̄| - log|z - w|`.
pub fn green(z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
    check_closed(z, "green: z")?;
    check_closed(w, "green: w")?;
    let (z, w) = (z.c(), w.c());
    let distance = (z - w).norm();
    if distance < COINCIDENT_GUARD {
        return Err(Error::CoincidentPoints { distance });
    }
    Ok((1.0 - z * w.conj()).norm().ln() - distance.ln())
}

/// Poisson kernel `P(z, e^{it}) = (1 - |z|²) / |1 - z e^{-it}|²`.
pub fn poisson_kernel(z: ComplexPoint, t: f64) -> Result<f64> {
    check_open(z, "poisson kernel")?;
    Ok(poisson_kernel_unchecked(z.c(), t))
}

#[inline]
pub(crate) fn poisson_kernel_unchecked(z: C64, t: f64) -> f64 {
    let r = z.norm();
    let denom = (1.0 - z * C64::from_polar(1.0, -t)).norm_sqr();
    (1.0 - r) * (1.0 + r) / denom
}

/// Disk automorphism `ζ = (z - w) / (1 - z̄ w)` for fixed `z`, as a map of `w`.
pub fn mobius(z: ComplexPoint, w: ComplexPoint) -> Result<ComplexPoint> {
    check_open(z, "mobius: z")?;
    check_closed(w, "mobius: w")?;
    Ok(mobius_unchecked(z.c(), w.c()).into())
}

#[inline]
pub(crate) fn mobius_unchecked(z: C64, w: C64) -> C64 {
    (z - w) / (1.0 - z.conj() * w)
}

/// Central-difference Wirtinger derivatives, `O(h²)` accurate.
pub fn wirtinger_numeric<F>(f: F, z: ComplexPoint, h: f64) -> Result<WirtingerDerivatives>
where
    F: Fn(C64) -> C64,
{
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h must be positive, got {h}")));
    }
    let reach = z.modulus() + h;
    if reach >= 1.0 {
        return Err(Error::StencilOutOfDomain { reach });
    }
    Ok(central_wirtinger(&f, z.c(), h))
}

/// Richardson-extrapolated variant combining steps `h` and `h/2` (`O(h⁴)`).
pub fn wirtinger_numeric_richardson<F>(f: F, z: ComplexPoint, h: f64) -> Result<WirtingerDerivatives>
where
    F: Fn(C64) -> C64,
{
    let coarse = wirtinger_numeric(&f, z, h)?;
    let fine = central_wirtinger(&f, z.c(), 0.5 * h);
    Ok(WirtingerDerivatives::new(
        (4.0 * fine.fz - coarse.fz) / 3.0,
        (4.0 * fine.fzbar - coarse.fzbar) / 3.0,
    ))
}

fn central_wirtinger<F: Fn(C64) -> C64>(f: &F, z: C64, h: f64) -> WirtingerDerivatives {
    let fx = (f(z + h) - f(z - h)) / (2.0 * h);
    let fy = (f(z + C64::new(0.0, h)) - f(z - C64::new(0.0, h))) / (2.0 * h);
    let i = C64::i();
    WirtingerDerivatives::new(0.5 * (fx - i * fy), 0.5 * (fx + i * fy))
}

/// Five-point finite-difference Laplacian.
pub fn laplacian_numeric<F>(f: F, z: ComplexPoint, h: f64) -> Result<C64>
where
    F: Fn(C64) -> C64,
{
    let reach = z.modulus() + h;
    if reach >= 1.0 {
        return Err(Error::StencilOutOfDomain { reach });
    }
    let z = z.c();
    let i = C64::i();
    let sum = f(z + h) + f(z - h) + f(z + i * h) + f(z - i * h) - 4.0 * f(z);
    Ok(sum / (h * h))
}
