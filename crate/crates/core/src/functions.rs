//! Functions in the closed unit ball of H∞ and the quantities derived from them.
//!
//! Möbius factors follow a single sign convention: a zero `a != 0` contributes
//! `(a - z) / (1 - conj(a) z)` and a zero at the origin contributes `z`. Any
//! other convention differs by a unimodular constant, which the
//! `unimodular_constant` field absorbs.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series;

const UNIMODULAR_TOL: f64 = 1e-12;
const SCHUR_TOL: f64 = 1e-10;
/// Distance from the boundary atom inside which singular inner evaluation is refused.
pub const ATOM_EXCLUSION: f64 = 1e-12;
/// Radial and angular resolution of the unit-ball certificate for polynomials.
const POLY_CHECK_GRID: usize = 64;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 2]")]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() && value.norm() < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::OutsideDisk {
                re: value.re,
                im: value.im,
            })
        }
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn from_polar(radius: f64, angle: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(radius, angle))
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

impl From<DiskPoint> for [f64; 2] {
    fn from(p: DiskPoint) -> Self {
        [p.0.re, p.0.im]
    }
}

/// Anything that can be evaluated at points of the disk.
///
/// Closures `Fn(Complex64) -> Complex64` implement this directly, which is how
/// ad-hoc test functions such as `1/(1-z)` enter membership checks.
pub trait DiskFunction {
    fn value(&self, z: DiskPoint) -> Result<Complex64>;
}

impl<F> DiskFunction for F
where
    F: Fn(Complex64) -> Complex64,
{
    fn value(&self, z: DiskPoint) -> Result<Complex64> {
        Ok(self(z.value()))
    }
}

/// Finite Blaschke product `c * prod_k phi_{a_k}(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    unimodular_constant: Complex64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>, unimodular_constant: Complex64) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvalidBlaschke("degree must be at least 1".into()));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidBlaschke(format!(
                "zero {a} is not inside the unit disk"
            )));
        }
        if (unimodular_constant.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::InvalidBlaschke(format!(
                "constant {unimodular_constant} is not unimodular"
            )));
        }
        Ok(Self {
            zeros,
            unimodular_constant,
        })
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); n], Complex64::new(1.0, 0.0))
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn unimodular_constant(&self) -> Complex64 {
        self.unimodular_constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        self.zeros.iter().fold(self.unimodular_constant, |acc, &a| {
            acc * mobius(a, z.value())
        })
    }

    pub fn taylor(&self, len: usize) -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(0.0, 0.0); len];
        if len == 0 {
            return acc;
        }
        acc[0] = self.unimodular_constant;
        for &a in &self.zeros {
            acc = series::mul(&acc, &series::mobius_factor(a, len), len);
        }
        acc
    }
}

/// Single Möbius factor under the crate-wide sign convention.
#[inline]
pub fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    if a == Complex64::new(0.0, 0.0) {
        z
    } else {
        (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
    }
}

/// Singular inner function `exp(-sigma (xi + z) / (xi - z))` with one boundary atom.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicSingularInner {
    mass: f64,
    boundary_atom: Complex64,
}

impl AtomicSingularInner {
    pub fn new(mass: f64, boundary_atom: Complex64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidSingularInner(format!(
                "mass {mass} must be positive"
            )));
        }
        if (boundary_atom.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::InvalidSingularInner(format!(
                "atom {boundary_atom} is not on the unit circle"
            )));
        }
        Ok(Self {
            mass,
            boundary_atom,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn boundary_atom(&self) -> Complex64 {
        self.boundary_atom
    }

    pub fn eval(&self, z: DiskPoint) -> Result<Complex64> {
        let xi = self.boundary_atom;
        let gap = xi - z.value();
        let distance = gap.norm();
        if distance < ATOM_EXCLUSION {
            return Err(Error::NearAtom { distance });
        }
        Ok((-self.mass * (xi + z.value()) / gap).exp())
    }

    pub fn taylor(&self, len: usize) -> Vec<Complex64> {
        // (xi + z)/(xi - z) = 1 + 2 sum_{n>=1} (conj(xi) z)^n
        let q = self.boundary_atom.conj();
        let mut g = series::geometric(q, len);
        for (n, coeff) in g.iter_mut().enumerate() {
            let factor = if n == 0 { -self.mass } else { -2.0 * self.mass };
            *coeff *= factor;
        }
        series::exp(&g, len)
    }
}

/// Polynomial with no unit-ball requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        series::eval(&self.coeffs, z)
    }

    pub fn taylor(&self, len: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o = *c;
        }
        out
    }

    /// `Some((c, k))` when the polynomial is `c z^k`.
    pub fn as_monomial(&self) -> Option<(Complex64, usize)> {
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&k| self.coeffs[k] != Complex64::new(0.0, 0.0))
            .collect();
        match nonzero.as_slice() {
            [] => Some((Complex64::new(0.0, 0.0), 0)),
            [k] => Some((self.coeffs[*k], *k)),
            _ => None,
        }
    }

    /// Largest modulus over the closed-disk grid used for unit-ball certificates.
    fn grid_sup(&self) -> (f64, Complex64) {
        let mut best = (0.0, Complex64::new(0.0, 0.0));
        for ring in 0..=POLY_CHECK_GRID {
            let r = ring as f64 / POLY_CHECK_GRID as f64;
            for k in 0..POLY_CHECK_GRID {
                let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / POLY_CHECK_GRID as f64);
                let m = self.eval(z).norm();
                if m > best.0 {
                    best = (m, z);
                }
            }
        }
        best
    }
}

impl DiskFunction for Polynomial {
    fn value(&self, z: DiskPoint) -> Result<Complex64> {
        Ok(self.eval(z.value()))
    }
}

/// A polynomial certified (on a grid) to lie in the closed unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPolynomial(Polynomial);

impl TaylorPolynomial {
    /// Checks `|p| <= 1` on a 64x64 radial-angular grid of the closed disk.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let poly = Polynomial::new(coeffs);
        let (sup, at) = poly.grid_sup();
        if sup > 1.0 + SCHUR_TOL {
            return Err(Error::NotSchur {
                modulus: sup,
                re: at.re,
                im: at.im,
            });
        }
        Ok(Self(poly))
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(coeffs: Vec<Complex64>) -> Self {
        Self(Polynomial::new(coeffs))
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn coeffs(&self) -> &[Complex64] {
        self.0.coeffs()
    }
}

/// A function in the closed unit ball of H∞.
#[derive(Debug, Clone, PartialEq)]
pub enum SchurFunction {
    Blaschke(BlaschkeProduct),
    Atomic(AtomicSingularInner),
    Polynomial(TaylorPolynomial),
    Constant(Complex64),
}

impl SchurFunction {
    pub fn constant(c: Complex64) -> Result<Self> {
        if c.norm() > 1.0 + SCHUR_TOL {
            return Err(Error::NotSchur {
                modulus: c.norm(),
                re: 0.0,
                im: 0.0,
            });
        }
        Ok(Self::Constant(c))
    }

    /// `z^n` as a Blaschke product.
    pub fn monomial(n: usize) -> Result<Self> {
        BlaschkeProduct::monomial(n).map(Self::Blaschke)
    }

    pub fn eval(&self, z: DiskPoint) -> Result<Complex64> {
        match self {
            Self::Blaschke(b) => Ok(b.eval(z)),
            Self::Atomic(s) => s.eval(z),
            Self::Polynomial(p) => {
                let v = p.0.eval(z.value());
                if v.norm() > 1.0 + SCHUR_TOL {
                    let z = z.value();
                    return Err(Error::NotSchur {
                        modulus: v.norm(),
                        re: z.re,
                        im: z.im,
                    });
                }
                Ok(v)
            }
            Self::Constant(c) => Ok(*c),
        }
    }

    /// First `m + 1` Taylor coefficients at the origin.
    pub fn taylor_coefficients(&self, m: usize) -> Vec<Complex64> {
        let len = m + 1;
        match self {
            Self::Blaschke(b) => b.taylor(len),
            Self::Atomic(s) => s.taylor(len),
            Self::Polynomial(p) => p.0.taylor(len),
            Self::Constant(c) => {
                let mut out = vec![Complex64::new(0.0, 0.0); len];
                out[0] = *c;
                out
            }
        }
    }

    pub fn is_inner(&self) -> bool {
        matches!(self, Self::Blaschke(_) | Self::Atomic(_))
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Self::Constant(_) => true,
            Self::Polynomial(p) => p.coeffs().iter().skip(1).all(|c| c.norm() == 0.0),
            _ => false,
        }
    }

    pub fn as_blaschke(&self) -> Option<&BlaschkeProduct> {
        match self {
            Self::Blaschke(b) => Some(b),
            _ => None,
        }
    }

    /// `Some((c, k))` when the function is `c z^k`; such symbols make kernels rotation-invariant.
    pub fn as_monomial(&self) -> Option<(Complex64, usize)> {
        match self {
            Self::Blaschke(b) => b
                .zeros()
                .iter()
                .all(|a| a.norm() == 0.0)
                .then(|| (b.unimodular_constant(), b.degree())),
            Self::Atomic(_) => None,
            Self::Polynomial(p) => p.0.as_monomial(),
            Self::Constant(c) => Some((*c, 0)),
        }
    }

    pub fn value_at_origin(&self) -> Result<Complex64> {
        self.eval(DiskPoint::origin())
    }
}

impl DiskFunction for SchurFunction {
    fn value(&self, z: DiskPoint) -> Result<Complex64> {
        self.eval(z)
    }
}

/// `f0(z) = (1 - conj(b(0)) b(z)) / sqrt(1 - |b(0)|^2)`, the unit-norm kernel of H(b) at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedZeroKernel {
    b: SchurFunction,
    b0: Complex64,
    scale: f64,
}

impl NormalizedZeroKernel {
    pub fn new(b: SchurFunction) -> Result<Self> {
        let b0 = b.value_at_origin()?;
        let defect = 1.0 - b0.norm_sqr();
        if !(defect > 0.0) {
            return Err(Error::DegenerateZeroKernel(b0.norm()));
        }
        Ok(Self {
            b,
            b0,
            scale: defect.sqrt(),
        })
    }

    pub fn symbol(&self) -> &SchurFunction {
        &self.b
    }

    pub fn b_at_origin(&self) -> Complex64 {
        self.b0
    }

    pub fn eval(&self, z: DiskPoint) -> Result<Complex64> {
        let bz = self.b.eval(z)?;
        Ok((Complex64::new(1.0, 0.0) - self.b0.conj() * bz) / self.scale)
    }

    /// Bound `sqrt((1 + |b(0)|) / (1 - |b(0)|))` on the sup norm of `1 / f0`.
    pub fn inverse_bound(&self) -> f64 {
        let m = self.b0.norm();
        ((1.0 + m) / (1.0 - m)).sqrt()
    }

    /// Radial form `c z^k` when `b` is radial.
    pub fn as_monomial(&self) -> Option<(Complex64, usize)> {
        // b(0) = 0 unless b is constant, so f0 is 1 or the constant sqrt(1 - |c|^2).
        let (_, k) = self.b.as_monomial()?;
        let value = if k == 0 { self.scale } else { 1.0 };
        Some((Complex64::new(value, 0.0), 0))
    }
}

impl DiskFunction for NormalizedZeroKernel {
    fn value(&self, z: DiskPoint) -> Result<Complex64> {
        self.eval(z)
    }
}

/// Analytic functions accepted where the unit-ball bound is not required
/// (conjugate scaling of kernels, multiplier and membership candidates).
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    Schur(SchurFunction),
    Polynomial(Polynomial),
    ZeroKernel(NormalizedZeroKernel),
}

impl AnalyticFunction {
    pub fn eval(&self, z: DiskPoint) -> Result<Complex64> {
        match self {
            Self::Schur(f) => f.eval(z),
            Self::Polynomial(p) => Ok(p.eval(z.value())),
            Self::ZeroKernel(f) => f.eval(z),
        }
    }

    pub fn as_monomial(&self) -> Option<(Complex64, usize)> {
        match self {
            Self::Schur(f) => f.as_monomial(),
            Self::Polynomial(p) => p.as_monomial(),
            Self::ZeroKernel(f) => f.as_monomial(),
        }
    }
}

impl From<SchurFunction> for AnalyticFunction {
    fn from(f: SchurFunction) -> Self {
        Self::Schur(f)
    }
}

impl DiskFunction for AnalyticFunction {
    fn value(&self, z: DiskPoint) -> Result<Complex64> {
        self.eval(z)
    }
}

/// `(1 - |b(z)|^2) / (1 - |z|^2)`; bounded on the disk exactly for finite Blaschke products.
pub fn blaschke_ratio(b: &SchurFunction, z: DiskPoint) -> Result<f64> {
    let bz = b.eval(z)?;
    Ok((1.0 - bz.norm_sqr()) / (1.0 - z.value().norm_sqr()))
}

/// Per-radius maximum of the Blaschke ratio over `angles` equispaced angles starting at 0.
pub fn ratio_table(b: &SchurFunction, radii: &[f64], angles: usize) -> Result<Vec<f64>> {
    if angles == 0 {
        return Err(Error::InvalidArgument(
            "angles_per_radius must be >= 1".into(),
        ));
    }
    radii
        .iter()
        .map(|&r| {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::InvalidArgument(format!("radius {r} not in (0, 1)")));
            }
            (0..angles).try_fold(0.0f64, |best, k| {
                let z = DiskPoint::from_polar(r, 2.0 * PI * k as f64 / angles as f64)?;
                Ok(best.max(blaschke_ratio(b, z)?))
            })
        })
        .collect()
}

/// Maximum of the Blaschke ratio over a radial-angular grid.
pub fn ratio_sup_estimate(b: &SchurFunction, radii: &[f64], angles: usize) -> Result<f64> {
    Ok(ratio_table(b, radii, angles)?
        .into_iter()
        .fold(0.0, f64::max))
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::write_complex(f, self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(x: f64) -> DiskPoint {
        DiskPoint::real(x).unwrap()
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::real(1.0).is_err());
        assert!(DiskPoint::new(c(0.8, 0.8)).is_err());
        assert!(DiskPoint::new(c(f64::NAN, 0.0)).is_err());
        assert!(DiskPoint::real(0.999).is_ok());
    }

    #[test]
    fn evaluate_examples() {
        let z = SchurFunction::monomial(1).unwrap();
        assert_eq!(z.eval(p(0.5)).unwrap(), c(0.5, 0.0));

        let s = SchurFunction::Atomic(AtomicSingularInner::new(1.0, c(1.0, 0.0)).unwrap());
        assert_relative_eq!(s.eval(p(0.0)).unwrap().re, (-1.0f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(s.eval(p(0.0)).unwrap().re, 0.3678794, epsilon = 1e-7);

        // (a - z)/(1 - a z) at 0 is a; the (z - a) convention is recovered with c = -1.
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0)], c(1.0, 0.0)).unwrap();
        assert_relative_eq!(b.eval(p(0.0)).re, 0.5);
        let flipped = BlaschkeProduct::new(vec![c(0.5, 0.0)], c(-1.0, 0.0)).unwrap();
        assert_relative_eq!(flipped.eval(p(0.0)).re, -0.5);
    }

    #[test]
    fn taylor_examples() {
        let z2 = SchurFunction::monomial(2).unwrap();
        let t = z2.taylor_coefficients(3);
        assert_eq!(t, vec![c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)]);

        // Oracle: (z - 1/2) * sum (z/2)^n multiplied out term by term.
        let mut oracle = [0.0; 3];
        for n in 0..3usize {
            let geo = 0.5f64.powi(n as i32);
            oracle[n] += -0.5 * geo;
            if n + 1 < 3 {
                oracle[n + 1] += geo;
            }
        }
        assert_eq!(oracle, [-0.5, 0.75, 0.375]);
        let flipped =
            SchurFunction::Blaschke(BlaschkeProduct::new(vec![c(0.5, 0.0)], c(-1.0, 0.0)).unwrap());
        for (got, want) in flipped.taylor_coefficients(2).iter().zip(oracle) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }

        let s = SchurFunction::Atomic(AtomicSingularInner::new(1.0, c(1.0, 0.0)).unwrap());
        let t = s.taylor_coefficients(0);
        assert_eq!(t.len(), 1);
        assert_relative_eq!(t[0].re, (-1.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn atomic_taylor_matches_evaluation() {
        let s = SchurFunction::Atomic(AtomicSingularInner::new(0.7, c(0.0, 1.0)).unwrap());
        let coeffs = s.taylor_coefficients(80);
        let z = DiskPoint::new(c(0.2, -0.1)).unwrap();
        let approx = series::eval(&coeffs, z.value());
        assert!((approx - s.eval(z).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn atom_is_refused() {
        let s = AtomicSingularInner::new(1.0, c(1.0, 0.0)).unwrap();
        let near = DiskPoint::real(1.0 - 1e-13).unwrap();
        assert!(matches!(s.eval(near), Err(Error::NearAtom { .. })));
    }

    #[test]
    fn constructors_validate() {
        assert!(BlaschkeProduct::new(vec![], c(1.0, 0.0)).is_err());
        assert!(BlaschkeProduct::new(vec![c(1.0, 0.0)], c(1.0, 0.0)).is_err());
        assert!(BlaschkeProduct::new(vec![c(0.1, 0.0)], c(0.5, 0.0)).is_err());
        assert!(AtomicSingularInner::new(0.0, c(1.0, 0.0)).is_err());
        assert!(AtomicSingularInner::new(1.0, c(0.5, 0.0)).is_err());
        assert!(TaylorPolynomial::new(vec![c(0.0, 0.0), c(2.0, 0.0)]).is_err());
        assert!(TaylorPolynomial::new(vec![c(0.5, 0.0), c(0.5, 0.0)]).is_ok());
        assert!(SchurFunction::constant(c(1.5, 0.0)).is_err());
    }

    #[test]
    fn zero_kernel_examples() {
        let f0 = NormalizedZeroKernel::new(SchurFunction::monomial(1).unwrap()).unwrap();
        assert_eq!(f0.inverse_bound(), 1.0);
        assert_eq!(f0.eval(p(0.3)).unwrap(), c(1.0, 0.0));

        let f0 = NormalizedZeroKernel::new(SchurFunction::monomial(2).unwrap()).unwrap();
        assert_eq!(f0.eval(p(0.0)).unwrap(), c(1.0, 0.0));

        let b =
            SchurFunction::Blaschke(BlaschkeProduct::new(vec![c(-0.5, 0.0)], c(1.0, 0.0)).unwrap());
        let f0 = NormalizedZeroKernel::new(b).unwrap();
        assert_relative_eq!(f0.b_at_origin().re, -0.5);
        assert_relative_eq!(f0.inverse_bound(), 3.0f64.sqrt(), epsilon = 1e-15);

        let unimodular = SchurFunction::constant(c(0.0, 1.0)).unwrap();
        assert!(matches!(
            NormalizedZeroKernel::new(unimodular),
            Err(Error::DegenerateZeroKernel(_))
        ));
    }

    #[test]
    fn ratio_examples() {
        let z = SchurFunction::monomial(1).unwrap();
        assert_relative_eq!(blaschke_ratio(&z, p(0.7)).unwrap(), 1.0, epsilon = 1e-14);
        let z2 = SchurFunction::monomial(2).unwrap();
        assert_relative_eq!(blaschke_ratio(&z2, p(0.6)).unwrap(), 1.36, epsilon = 1e-14);

        let s = SchurFunction::Atomic(AtomicSingularInner::new(1.0, c(1.0, 0.0)).unwrap());
        let oracle = (1.0 - (-38.0f64).exp()) / (1.0 - 0.81);
        assert_relative_eq!(blaschke_ratio(&s, p(0.9)).unwrap(), oracle, epsilon = 1e-12);
        assert_relative_eq!(oracle, 5.2631579, epsilon = 1e-7);
    }

    #[test]
    fn ratio_sup_examples() {
        let z2 = SchurFunction::monomial(2).unwrap();
        let radii = [0.5, 0.9, 0.99, 0.999];
        let table = ratio_table(&z2, &radii, 8).unwrap();
        assert!(table.windows(2).all(|w| w[0] <= w[1]));
        assert!(table.iter().all(|&v| v <= 2.0));
        assert!(ratio_sup_estimate(&z2, &radii, 8).unwrap() > 1.99);

        let z = SchurFunction::monomial(1).unwrap();
        assert_relative_eq!(
            ratio_sup_estimate(&z, &radii, 5).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let s = SchurFunction::Atomic(AtomicSingularInner::new(1.0, c(1.0, 0.0)).unwrap());
        let sup = ratio_sup_estimate(&s, &[0.9, 0.99, 0.999], 16).unwrap();
        let at_axis = blaschke_ratio(&s, p(0.999)).unwrap();
        assert!(sup >= at_axis);
        assert_relative_eq!(
            at_axis,
            1.0 / (1.0 - 0.999f64.powi(2)),
            max_relative = 1e-12
        );
        assert!(ratio_table(&s, &[1.0], 4).is_err());
        assert!(ratio_table(&s, &[0.5], 0).is_err());
    }
}
