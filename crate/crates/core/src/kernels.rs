//! Closed-form kernels on the disk, kernel algebra, point sets and Gram assembly.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::{AnalyticFunction, DiskPoint, SchurFunction};

/// Minimum pairwise distance between points of a [`PointSet`].
pub const MIN_SEPARATION: f64 = 1e-10;
/// Gram-based tests drop points beyond this radius unless asked not to.
pub const GRAM_RADIUS_LIMIT: f64 = 0.95;
pub const DEFAULT_RADII: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 0.9];
pub const DEFAULT_ANGLES: usize = 16;

/// Expression tree of kernels `K(z, w)` on the disk.
///
/// Every constructor except [`KernelExpr::Difference`] produces a positive kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelExpr {
    /// `1 / (1 - conj(w) z)`.
    Szego,
    /// `1 / (1 - conj(w) z)^(alpha + 2)`, alpha >= -1.
    WeightedBergman {
        alpha: f64,
    },
    /// `(1 - conj(b(w)) b(z)) / (1 - conj(w) z)`.
    DeBrangesRovnyak {
        b: SchurFunction,
    },
    /// `(1 - conj(b(w)) b(z)) / (1 - conj(w) z)^(alpha + 2)`, alpha >= 0.
    SubBergman {
        b: SchurFunction,
        alpha: f64,
    },
    Sum(Box<KernelExpr>, Box<KernelExpr>),
    SchurProduct(Box<KernelExpr>, Box<KernelExpr>),
    Scale(f64, Box<KernelExpr>),
    /// `K1 - K2`; not positive in general.
    Difference(Box<KernelExpr>, Box<KernelExpr>),
    /// `f(z) conj(f(w)) K(z, w)`.
    ConjugateScale(AnalyticFunction, Box<KernelExpr>),
}

impl KernelExpr {
    pub fn szego() -> Self {
        Self::Szego
    }

    pub fn weighted_bergman(alpha: f64) -> Result<Self> {
        if !(alpha >= -1.0 && alpha.is_finite()) {
            return Err(Error::InvalidWeight(alpha));
        }
        Ok(Self::WeightedBergman { alpha })
    }

    pub fn de_branges_rovnyak(b: SchurFunction) -> Self {
        Self::DeBrangesRovnyak { b }
    }

    pub fn sub_bergman(b: SchurFunction, alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidWeight(alpha));
        }
        Ok(Self::SubBergman { b, alpha })
    }

    pub fn sum(a: Self, b: Self) -> Self {
        Self::Sum(Box::new(a), Box::new(b))
    }

    pub fn schur(a: Self, b: Self) -> Self {
        Self::SchurProduct(Box::new(a), Box::new(b))
    }

    pub fn scale(c: f64, k: Self) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale {c} must be nonnegative"
            )));
        }
        Ok(Self::Scale(c, Box::new(k)))
    }

    pub fn difference(a: Self, b: Self) -> Self {
        Self::Difference(Box::new(a), Box::new(b))
    }

    pub fn conjugate_scale(f: impl Into<AnalyticFunction>, k: Self) -> Self {
        Self::ConjugateScale(f.into(), Box::new(k))
    }

    /// True when no `Difference` node occurs, so positivity is guaranteed.
    pub fn is_positivity_preserving(&self) -> bool {
        match self {
            Self::Difference(..) => false,
            Self::Sum(a, b) | Self::SchurProduct(a, b) => {
                a.is_positivity_preserving() && b.is_positivity_preserving()
            }
            Self::Scale(_, k) | Self::ConjugateScale(_, k) => k.is_positivity_preserving(),
            _ => true,
        }
    }

    pub fn eval(&self, z: DiskPoint, w: DiskPoint) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let gap = || one - w.value().conj() * z.value();
        Ok(match self {
            Self::Szego => one / gap(),
            Self::WeightedBergman { alpha } => inverse_power(gap(), alpha + 2.0),
            Self::DeBrangesRovnyak { b } => (one - b.eval(w)?.conj() * b.eval(z)?) / gap(),
            Self::SubBergman { b, alpha } => {
                (one - b.eval(w)?.conj() * b.eval(z)?) * inverse_power(gap(), alpha + 2.0)
            }
            Self::Sum(a, b) => a.eval(z, w)? + b.eval(z, w)?,
            Self::SchurProduct(a, b) => a.eval(z, w)? * b.eval(z, w)?,
            Self::Scale(c, k) => k.eval(z, w)? * *c,
            Self::Difference(a, b) => a.eval(z, w)? - b.eval(z, w)?,
            Self::ConjugateScale(f, k) => f.eval(z)? * f.eval(w)?.conj() * k.eval(z, w)?,
        })
    }
}

/// `d^(-e)` on the principal branch; integer exponents use repeated multiplication.
fn inverse_power(d: Complex64, e: f64) -> Complex64 {
    if e.fract() == 0.0 && e.abs() <= 64.0 {
        d.powi(e as i32).inv()
    } else {
        d.powf(-e)
    }
}

/// How a point set was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Explicit(Vec<DiskPoint>),
    /// Circles of the given radii, each carrying `angles` equispaced points starting at angle 0.
    Radial {
        radii: Vec<f64>,
        angles: usize,
    },
    /// `count` points uniform in the disk of radius `max_radius`, from a ChaCha8 stream.
    Random {
        count: usize,
        max_radius: f64,
        seed: u64,
    },
}

impl GridSpec {
    pub fn radial(radii: Vec<f64>, angles: usize) -> Self {
        Self::Radial { radii, angles }
    }

    pub fn random(count: usize, max_radius: f64, seed: u64) -> Self {
        Self::Random {
            count,
            max_radius,
            seed,
        }
    }

    /// Radii {0.2, 0.4, 0.6, 0.8, 0.9} with 16 angles each.
    pub fn default_grid() -> Self {
        Self::radial(DEFAULT_RADII.to_vec(), DEFAULT_ANGLES)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Explicit(points) => json!({
                "kind": "explicit",
                "points": points,
            }),
            Self::Radial { radii, angles } => json!({
                "kind": "radial",
                "radii": radii,
                "angles": angles,
                "spec": self.to_string(),
            }),
            Self::Random {
                count,
                max_radius,
                seed,
            } => json!({
                "kind": "random",
                "n": count,
                "rmax": max_radius,
                "seed": seed,
                "spec": self.to_string(),
            }),
        }
    }
}

/// Ordered, pairwise distinct points of the open disk.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<DiskPoint>,
    spec: GridSpec,
}

impl PointSet {
    pub fn explicit(points: Vec<DiskPoint>) -> Result<Self> {
        Self::checked(points.clone(), GridSpec::Explicit(points))
    }

    pub fn default_grid() -> Self {
        sample_grid(&GridSpec::default_grid()).expect("default grid is valid")
    }

    fn checked(points: Vec<DiskPoint>, spec: GridSpec) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("empty point set".into()));
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[..i] {
                if (p.value() - q.value()).norm() < MIN_SEPARATION {
                    return Err(Error::InvalidGrid(format!(
                        "points {p} and {q} closer than {MIN_SEPARATION:e}"
                    )));
                }
            }
        }
        Ok(Self { points, spec })
    }

    pub fn points(&self) -> &[DiskPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn max_radius(&self) -> f64 {
        self.points.iter().map(|p| p.modulus()).fold(0.0, f64::max)
    }

    /// Drops points with modulus above `limit`, keeping the provenance as precise as possible.
    pub fn restrict_radius(&self, limit: f64) -> Result<Self> {
        match &self.spec {
            GridSpec::Radial { radii, angles } => sample_grid(&GridSpec::radial(
                radii.iter().copied().filter(|&r| r <= limit).collect(),
                *angles,
            )),
            _ if self.max_radius() <= limit => Ok(self.clone()),
            _ => Self::explicit(
                self.points
                    .iter()
                    .copied()
                    .filter(|p| p.modulus() <= limit)
                    .collect(),
            ),
        }
    }

    /// The point set used for Gram-based tests: points beyond [`GRAM_RADIUS_LIMIT`] removed.
    pub fn gram_safe(&self) -> Result<Self> {
        self.restrict_radius(GRAM_RADIUS_LIMIT)
    }
}

/// Builds the point set described by `spec`; identical specs give bit-identical points.
pub fn sample_grid(spec: &GridSpec) -> Result<PointSet> {
    let points = match spec {
        GridSpec::Explicit(points) => points.clone(),
        GridSpec::Radial { radii, angles } => {
            if radii.is_empty() || *angles == 0 {
                return Err(Error::InvalidGrid(
                    "radial grid needs radii and angles".into(),
                ));
            }
            let mut points = Vec::with_capacity(radii.len() * angles);
            for &r in radii {
                if !(0.0..1.0).contains(&r) {
                    return Err(Error::InvalidGrid(format!("radius {r} not in [0, 1)")));
                }
                if r == 0.0 {
                    points.push(DiskPoint::origin());
                    continue;
                }
                for k in 0..*angles {
                    let theta = 2.0 * PI * k as f64 / *angles as f64;
                    points.push(DiskPoint::from_polar(r, theta)?);
                }
            }
            points
        }
        GridSpec::Random {
            count,
            max_radius,
            seed,
        } => {
            if *count == 0 {
                return Err(Error::InvalidGrid("random grid needs n >= 1".into()));
            }
            if !(*max_radius > 0.0 && *max_radius < 1.0) {
                return Err(Error::InvalidGrid(format!(
                    "rmax {max_radius} not in (0, 1)"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| {
                    let u: f64 = rng.random();
                    let v: f64 = rng.random();
                    DiskPoint::from_polar(max_radius * u.sqrt(), 2.0 * PI * v)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    PointSet::checked(points, spec.clone())
}

/// Hermitian matrix of kernel values over a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    matrix: DMatrix<Complex64>,
}

impl GramMatrix {
    /// Wraps a square matrix, replacing it with its Hermitian part `(G + G*) / 2`.
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument("Gram matrix must be square".into()));
        }
        let hermitian = (&matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self { matrix: hermitian })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.component_mul(&other.matrix),
        }
    }
}

/// `G[i][j] = K(p_i, p_j)`, symmetrized. Entries are filled row by row.
pub fn gram(kernel: &KernelExpr, points: &PointSet) -> Result<GramMatrix> {
    let pts = points.points();
    let n = pts.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = kernel.eval(pts[i], pts[j])?;
        }
    }
    GramMatrix::from_matrix(m)
}
