//! Truncated Toeplitz operators on H² and the weighted Bergman spaces, the
//! defect operator `I - T_b T_b*`, and norms in its range space.
//!
//! Matrices act on span{e_0, ..., e_N} where `e_n = z^n / ||z^n||_alpha` is the
//! orthonormal monomial basis. Only analytic symbols and their adjoints are
//! supported, so no projection onto the analytic subspace is ever formed:
//! `T_b` is multiplication by `b` followed by truncation.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::{DiskPoint, SchurFunction};
use crate::linalg::{self, CMatrix, CVector};
use crate::series;

/// Eigenvalues of the defect below `-CLIP_LIMIT` are reported as an error.
pub const CLIP_LIMIT: f64 = 1e-8;
/// Absolute cutoff on eigenvalues of the defect square root.
pub const PINV_CUTOFF: f64 = 1e-10;
/// Relative cutoff on eigenvalues of the defect square root; sits above the
/// `sqrt(eps)` level that rounding in `D` produces in the square root.
pub const PINV_RELATIVE_CUTOFF: f64 = 1e-7;
/// Largest tolerated component of a vector outside the range of the square root.
pub const RANGE_LEAK: f64 = 1e-8;

/// `||z^n||^2` in A²_alpha for n = 0..=degree; all ones for alpha = -1 (H²).
pub fn monomial_norms(alpha: f64, degree: usize) -> Result<Vec<f64>> {
    if !(alpha >= -1.0 && alpha.is_finite()) {
        return Err(Error::InvalidWeight(alpha));
    }
    let mut out = Vec::with_capacity(degree + 1);
    let mut norm = 1.0;
    out.push(norm);
    for n in 1..=degree {
        // n! Γ(α+2) / Γ(n+α+2), built by ratios
        norm *= n as f64 / (n as f64 + alpha + 1.0);
        out.push(norm);
    }
    Ok(out)
}

/// The space A²_alpha truncated to degree N, described by its monomial norms.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceWeight {
    alpha: f64,
    monomial_norms: Vec<f64>,
}

impl SpaceWeight {
    pub fn new(alpha: f64, degree: usize) -> Result<Self> {
        Ok(Self {
            alpha,
            monomial_norms: monomial_norms(alpha, degree)?,
        })
    }

    pub fn hardy(degree: usize) -> Self {
        Self::new(-1.0, degree).expect("alpha = -1 is valid")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn degree(&self) -> usize {
        self.monomial_norms.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.monomial_norms.len()
    }

    /// Squared norms `||z^n||^2`.
    pub fn monomial_norms(&self) -> &[f64] {
        &self.monomial_norms
    }

    /// Orthonormal-basis coordinates of a polynomial given by Taylor coefficients.
    pub fn to_orthonormal(&self, taylor: &[Complex64]) -> Result<CVector> {
        if taylor.len() > self.dim() && taylor[self.dim()..].iter().any(|c| c.norm() != 0.0) {
            return Err(Error::InvalidArgument(format!(
                "vector of degree {} exceeds truncation degree {}",
                taylor.len() - 1,
                self.degree()
            )));
        }
        Ok(CVector::from_fn(self.dim(), |n, _| {
            taylor.get(n).copied().unwrap_or_default() * self.monomial_norms[n].sqrt()
        }))
    }

    /// Orthonormal coordinates of the truncated reproducing kernel at `w`:
    /// `conj(w)^n / ||z^n||`.
    pub fn kernel_vector(&self, w: DiskPoint) -> CVector {
        let q = w.value().conj();
        let mut power = Complex64::new(1.0, 0.0);
        CVector::from_fn(self.dim(), |n, _| {
            let v = power / self.monomial_norms[n].sqrt();
            power *= q;
            v
        })
    }

    /// Taylor coefficients of the truncated reproducing kernel at `w`.
    pub fn kernel_taylor(&self, w: DiskPoint) -> Vec<Complex64> {
        let q = w.value().conj();
        let mut power = Complex64::new(1.0, 0.0);
        self.monomial_norms
            .iter()
            .map(|m| {
                let v = power / *m;
                power *= q;
                v
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    /// `T_b`: multiplication by b.
    Analytic(SchurFunction),
    /// `T_{conj(b)}` = `T_b*`.
    CoAnalytic(SchurFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedToeplitz {
    weight: SpaceWeight,
    symbol: Symbol,
    matrix: CMatrix,
}

impl TruncatedToeplitz {
    pub fn degree(&self) -> usize {
        self.weight.degree()
    }

    pub fn weight(&self) -> &SpaceWeight {
        &self.weight
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn operator_norm(&self) -> Result<f64> {
        linalg::spectral_norm(&self.matrix)
    }

    pub fn sidecar(&self) -> Value {
        let (kind, b) = match &self.symbol {
            Symbol::Analytic(b) => ("analytic", b),
            Symbol::CoAnalytic(b) => ("coanalytic", b),
        };
        matrix_sidecar(&self.matrix, &self.weight, kind, &b.to_string())
    }
}

/// Compression of multiplication by `b` to span{e_0..e_N}.
///
/// Entry `(m, n)` is `b_{m-n} ||z^m|| / ||z^n||` for `m >= n`; the Taylor
/// series of `b` is cut at degree N, which loses nothing after compression.
pub fn toeplitz_analytic(b: &SchurFunction, weight: &SpaceWeight) -> TruncatedToeplitz {
    let n = weight.dim();
    let coeffs = b.taylor_coefficients(weight.degree());
    let norms: Vec<f64> = weight.monomial_norms().iter().map(|v| v.sqrt()).collect();
    let matrix = CMatrix::from_fn(n, n, |row, col| {
        if row >= col {
            coeffs[row - col] * (norms[row] / norms[col])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    TruncatedToeplitz {
        weight: weight.clone(),
        symbol: Symbol::Analytic(b.clone()),
        matrix,
    }
}

/// `T_{conj(b)}`, the conjugate transpose of [`toeplitz_analytic`].
pub fn toeplitz_coanalytic(b: &SchurFunction, weight: &SpaceWeight) -> TruncatedToeplitz {
    let analytic = toeplitz_analytic(b, weight);
    TruncatedToeplitz {
        weight: weight.clone(),
        symbol: Symbol::CoAnalytic(b.clone()),
        matrix: analytic.matrix.adjoint(),
    }
}

/// `D = I - T_b T_b*` with its principal square root.
#[derive(Debug, Clone)]
pub struct DefectOperator {
    weight: SpaceWeight,
    symbol: SchurFunction,
    defect: CMatrix,
    sqrt: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
    clip: f64,
}

pub fn defect(b: &SchurFunction, weight: &SpaceWeight) -> Result<DefectOperator> {
    let t = toeplitz_analytic(b, weight);
    let n = weight.dim();
    let d = linalg::hermitian_part(&(CMatrix::identity(n, n) - &t.matrix * t.matrix.adjoint()));
    let eig = linalg::eigh(&d)?;
    let clip = eig.values.first().map_or(0.0, |&v| (-v).max(0.0));
    if clip > CLIP_LIMIT {
        return Err(Error::DefectClip(clip));
    }
    let eigenvalues: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();
    let root = CMatrix::from_fn(n, n, |r, c| eig.vectors[(r, c)] * eigenvalues[c].sqrt());
    let sqrt = linalg::hermitian_part(&(root * eig.vectors.adjoint()));
    Ok(DefectOperator {
        weight: weight.clone(),
        symbol: b.clone(),
        defect: d,
        sqrt,
        eigenvalues,
        eigenvectors: eig.vectors,
        clip,
    })
}

impl DefectOperator {
    pub fn matrix(&self) -> &CMatrix {
        &self.defect
    }

    pub fn sqrt(&self) -> &CMatrix {
        &self.sqrt
    }

    /// Eigenvalues of `D` after clipping, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Magnitude of the most negative eigenvalue removed by clipping.
    pub fn clip(&self) -> f64 {
        self.clip
    }

    pub fn weight(&self) -> &SpaceWeight {
        &self.weight
    }

    pub fn symbol(&self) -> &SchurFunction {
        &self.symbol
    }

    /// Norm in the range space of `D^(1/2)` of the polynomial with the given
    /// Taylor coefficients: the norm of the minimal-norm `g` with `S g = f`.
    pub fn range_norm(&self, taylor: &[Complex64]) -> Result<f64> {
        let f = self.weight.to_orthonormal(taylor)?;
        let coords = self.eigenvectors.adjoint() * f;
        let s_max = self.eigenvalues.last().map_or(0.0, |v| v.sqrt());
        let cutoff = PINV_CUTOFF.max(PINV_RELATIVE_CUTOFF * s_max);
        let mut norm_sq = 0.0;
        let mut leak_sq = 0.0;
        for (y, &lambda) in coords.iter().zip(&self.eigenvalues) {
            if lambda.sqrt() > cutoff {
                norm_sq += y.norm_sqr() / lambda;
            } else {
                leak_sq += y.norm_sqr();
            }
        }
        let leak = leak_sq.sqrt();
        if leak > RANGE_LEAK {
            return Err(Error::OutsideRange(leak));
        }
        Ok(norm_sq.sqrt())
    }

    pub fn sidecar(&self) -> Value {
        matrix_sidecar(
            &self.defect,
            &self.weight,
            "defect",
            &self.symbol.to_string(),
        )
    }
}

pub fn range_norm(taylor: &[Complex64], b: &SchurFunction, weight: &SpaceWeight) -> Result<f64> {
    defect(b, weight)?.range_norm(taylor)
}

/// Taylor coefficients of `(1 - conj(b(w)) b(z)) K_w(z)` truncated at the weight's degree,
/// where `K_w` is the reproducing kernel of A²_alpha.
pub fn sub_bergman_kernel_taylor(
    b: &SchurFunction,
    weight: &SpaceWeight,
    w: DiskPoint,
) -> Result<Vec<Complex64>> {
    let len = weight.dim();
    let kernel = weight.kernel_taylor(w);
    let bw = b.eval(w)?.conj();
    let product = series::mul(&b.taylor_coefficients(weight.degree()), &kernel, len);
    Ok(kernel
        .iter()
        .zip(product)
        .map(|(k, p)| k - bw * p)
        .collect())
}

/// Relative residual `||T_b* k_w - conj(b(w)) k_w|| / ||k_w||` of the kernel
/// eigenvector identity, computed at truncation degree N.
pub fn eigenvector_check(b: &SchurFunction, weight: &SpaceWeight, w: DiskPoint) -> Result<f64> {
    if w.modulus() > 0.9 {
        return Err(Error::InvalidArgument(format!(
            "|w| = {} exceeds 0.9; truncated kernels are too inaccurate there",
            w.modulus()
        )));
    }
    let adjoint = toeplitz_coanalytic(b, weight);
    let kappa = weight.kernel_vector(w);
    let bw = b.eval(w)?.conj();
    let residual = adjoint.matrix() * &kappa - &kappa * bw;
    Ok(residual.norm() / kappa.norm())
}

/// Row-major CSV; each entry occupies two columns `re,im` printed with 17 significant digits.
pub fn matrix_csv(m: &CMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if c > 0 {
                out.push(',');
            }
            let z = m[(r, c)];
            let _ = write!(out, "{:.16e},{:.16e}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

fn matrix_sidecar(m: &CMatrix, weight: &SpaceWeight, kind: &str, symbol: &str) -> Value {
    json!({
        "rows": m.nrows(),
        "cols": m.ncols(),
        "kind": kind,
        "symbol": symbol,
        "alpha": weight.alpha(),
        "degree": weight.degree(),
        "basis": "orthonormal monomials e_n = z^n / ||z^n||_alpha, n = 0..degree",
        "layout": "row-major; each entry written as two columns re,im",
    })
}
