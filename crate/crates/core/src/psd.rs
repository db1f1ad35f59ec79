//! Positivity and dominance of kernels on finite point sets.
//!
//! A grid test can only refute positivity; a passing verdict means "not
//! refuted on this grid". For rotation-invariant kernels
//! `K(z, w) = sum_n c_n (conj(w) z)^n` the coefficient oracle is exact:
//! `K` is positive iff every `c_n >= 0`.

use nalgebra::Cholesky;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::DiskFunction;
use crate::kernels::{gram, GramMatrix, GridSpec, KernelExpr, PointSet};
use crate::linalg::{self, CMatrix};

/// Relative tolerance: PSD iff `min_eig >= -tol * max(1, ||G||)`.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Jitter added to the second Gram matrix, relative to its mean diagonal.
pub const JITTER_FACTOR: f64 = 1e-12;
/// Coefficients above this negative threshold count as nonnegative in the oracle.
pub const ORACLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdVerdict {
    pub is_psd: bool,
    #[serde(rename = "min_eig")]
    pub min_eigenvalue: f64,
    #[serde(rename = "max_eig")]
    pub max_eigenvalue: f64,
    #[serde(rename = "tol")]
    pub tolerance_used: f64,
}

impl PsdVerdict {
    /// The same eigenvalue data judged at a different tolerance.
    pub fn with_tolerance(self, tol: f64) -> Self {
        Self::from_eigenvalues(&[self.min_eigenvalue, self.max_eigenvalue], tol)
    }

    fn from_eigenvalues(values: &[f64], tol: f64) -> Self {
        let min = values.first().copied().unwrap_or(0.0);
        let max = values.last().copied().unwrap_or(0.0);
        let norm = min.abs().max(max.abs());
        Self {
            is_psd: min >= -tol * norm.max(1.0),
            min_eigenvalue: min,
            max_eigenvalue: max,
            tolerance_used: tol,
        }
    }
}

pub fn is_psd(g: &GramMatrix, tol: f64) -> Result<PsdVerdict> {
    let values = linalg::eigvalsh(g.matrix())?;
    Ok(PsdVerdict::from_eigenvalues(&values, tol))
}

/// Result of a dominance query `K1 <= delta K2` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    pub delta_min: f64,
    /// Largest eigenvalue of the jittered pencil, before tolerance polishing.
    pub pencil_eigenvalue: f64,
    pub min_eig_at_delta: f64,
    pub jitter: f64,
    pub grid: GridSpec,
    pub kernel1: KernelExpr,
    pub kernel2: KernelExpr,
}

impl DominanceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "delta_min": self.delta_min,
            "pencil_eigenvalue": self.pencil_eigenvalue,
            "min_eig": self.min_eig_at_delta,
            "jitter": self.jitter,
            "grid": self.grid.to_json(),
            "kernel1": self.kernel1.to_string(),
            "kernel2": self.kernel2.to_string(),
        })
    }
}

/// Largest generalized eigenvalue of the pencil `(g1, g2)`, regularized by
/// factoring `g2 + jitter I` with `jitter = 1e-12 trace(g2) / n`.
///
/// Returns `(lambda_max, jitter)`. The jitter biases the result downward, but
/// rounding in the near-null space of `g2` is amplified by roughly
/// `eps ||g2|| / jitter`, so the value can sit a few parts in 1e6 above the
/// exact pencil eigenvalue.
pub fn generalized_max_eigenvalue(g1: &CMatrix, g2: &CMatrix) -> Result<(f64, f64)> {
    linalg::ensure_finite(g1)?;
    linalg::ensure_finite(g2)?;
    let n = g2.nrows();
    let trace: f64 = (0..n).map(|i| g2[(i, i)].re).sum();
    let jitter = JITTER_FACTOR * trace / n as f64;
    let shifted =
        linalg::hermitian_part(g2) + CMatrix::identity(n, n) * Complex64::new(jitter, 0.0);
    let chol = Cholesky::new(shifted).ok_or(Error::SingularGram { jitter })?;
    let l = chol.l();
    let half = l
        .solve_lower_triangular(&linalg::hermitian_part(g1))
        .ok_or(Error::SingularGram { jitter })?;
    let congruent = l
        .solve_lower_triangular(&half.adjoint())
        .ok_or(Error::SingularGram { jitter })?;
    let values = linalg::eigvalsh(&congruent)?;
    Ok((values.last().copied().unwrap_or(0.0), jitter))
}

/// Relative width at which the polishing bisection stops.
const POLISH_REL: f64 = 1e-11;
const MAX_EXPANSIONS: usize = 200;

/// Smallest `delta >= 0` for which `delta g2 - g1` passes [`is_psd`] at `tol`,
/// bracketed around the pencil estimate `guess`.
fn polish_delta(g1: &CMatrix, g2: &CMatrix, guess: f64, tol: f64) -> Result<(f64, f64)> {
    let gap = |delta: f64| -> Result<PsdVerdict> {
        let m = g2 * Complex64::new(delta, 0.0) - g1;
        let values = linalg::eigvalsh(&m)?;
        Ok(PsdVerdict::from_eigenvalues(&values, tol))
    };
    let at_zero = gap(0.0)?;
    if at_zero.is_psd {
        return Ok((0.0, at_zero.min_eigenvalue));
    }
    let mut hi = if guess > 0.0 {
        guess * (1.0 + 1e-6)
    } else {
        1e-12
    };
    let mut hi_verdict = gap(hi)?;
    let mut expansions = 0;
    while !hi_verdict.is_psd {
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::SingularGram { jitter: 0.0 });
        }
        hi *= 2.0;
        hi_verdict = gap(hi)?;
    }
    let mut lo = if guess > 0.0 && guess * (1.0 - 1e-3) < hi {
        guess * (1.0 - 1e-3)
    } else {
        0.0
    };
    if gap(lo)?.is_psd {
        lo = 0.0;
    }
    while hi - lo > POLISH_REL * hi {
        let mid = 0.5 * (lo + hi);
        let v = gap(mid)?;
        if v.is_psd {
            hi = mid;
            hi_verdict = v;
        } else {
            lo = mid;
        }
    }
    Ok((hi, hi_verdict.min_eigenvalue))
}

/// Smallest `delta >= 0` with `gram(K1) <= delta gram(K2)` on `points`.
///
/// The jittered pencil eigenvalue is refined to the smallest `delta` at which
/// `delta G2 - G1` passes the same tolerance test as [`is_psd`], so that for
/// every `delta >= delta_min` the difference is PSD within tolerance.
pub fn dominance_delta_min(
    k1: &KernelExpr,
    k2: &KernelExpr,
    points: &PointSet,
) -> Result<DominanceReport> {
    let g1 = gram(k1, points)?;
    let g2 = gram(k2, points)?;
    let second = is_psd(&g2, DEFAULT_TOL)?;
    if !second.is_psd {
        return Err(Error::InvalidArgument(format!(
            "dominating kernel {k2} is not PSD on the grid (min eig {:e})",
            second.min_eigenvalue
        )));
    }
    let (lambda, jitter) = generalized_max_eigenvalue(g1.matrix(), g2.matrix())?;
    let (delta_min, min_eig_at_delta) =
        polish_delta(g1.matrix(), g2.matrix(), lambda, DEFAULT_TOL)?;
    Ok(DominanceReport {
        delta_min,
        pencil_eigenvalue: lambda,
        min_eig_at_delta,
        jitter,
        grid: points.spec().clone(),
        kernel1: k1.clone(),
        kernel2: k2.clone(),
    })
}

/// Coefficients of a rotation-invariant kernel and the positivity verdict at that order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalOracle {
    pub coefficients: Vec<f64>,
    pub positive: bool,
    pub first_negative: Option<usize>,
}

/// Coefficients `c_0..c_M` of `K(z, w) = sum c_n (conj(w) z)^n`.
pub fn diagonal_coefficients(kernel: &KernelExpr, order: usize) -> Result<Vec<f64>> {
    let len = order + 1;
    let monomial_weight = |modsq: f64, k: usize| {
        let mut out = vec![0.0; len];
        if k < len {
            out[k] = modsq;
        }
        out
    };
    let defect = |b: &crate::functions::SchurFunction| -> Result<Vec<f64>> {
        let (c, k) = b.as_monomial().ok_or_else(|| {
            Error::NotRotationInvariant(format!("symbol {b} is not of the form c z^k"))
        })?;
        let mut out = monomial_weight(c.norm_sqr(), k);
        out.iter_mut().for_each(|v| *v = -*v);
        out[0] += 1.0;
        Ok(out)
    };
    Ok(match kernel {
        KernelExpr::Szego => vec![1.0; len],
        KernelExpr::WeightedBergman { alpha } => bergman_coefficients(*alpha, len),
        KernelExpr::DeBrangesRovnyak { b } => {
            crate::series::mul_real(&defect(b)?, &vec![1.0; len], len)
        }
        KernelExpr::SubBergman { b, alpha } => {
            crate::series::mul_real(&defect(b)?, &bergman_coefficients(*alpha, len), len)
        }
        KernelExpr::Sum(a, b) => {
            let (a, b) = (
                diagonal_coefficients(a, order)?,
                diagonal_coefficients(b, order)?,
            );
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
        KernelExpr::Difference(a, b) => {
            let (a, b) = (
                diagonal_coefficients(a, order)?,
                diagonal_coefficients(b, order)?,
            );
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        }
        KernelExpr::SchurProduct(a, b) => crate::series::mul_real(
            &diagonal_coefficients(a, order)?,
            &diagonal_coefficients(b, order)?,
            len,
        ),
        KernelExpr::Scale(c, k) => diagonal_coefficients(k, order)?
            .into_iter()
            .map(|v| c * v)
            .collect(),
        KernelExpr::ConjugateScale(f, k) => {
            let (c, m) = f.as_monomial().ok_or_else(|| {
                Error::NotRotationInvariant(format!("function {f} is not of the form c z^k"))
            })?;
            crate::series::mul_real(
                &monomial_weight(c.norm_sqr(), m),
                &diagonal_coefficients(k, order)?,
                len,
            )
        }
    })
}

/// `(alpha + 2)_n / n!`, the coefficients of `1 / (1 - x)^(alpha + 2)`.
fn bergman_coefficients(alpha: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut term = 1.0;
    for n in 0..len {
        out.push(term);
        let next = (n + 1) as f64;
        term *= (alpha + 1.0 + next) / next;
    }
    out
}

pub fn diagonal_positivity_oracle(kernel: &KernelExpr, order: usize) -> Result<DiagonalOracle> {
    let coefficients = diagonal_coefficients(kernel, order)?;
    let first_negative = coefficients.iter().position(|&c| c < -ORACLE_TOL);
    Ok(DiagonalOracle {
        positive: first_negative.is_none(),
        first_negative,
        coefficients,
    })
}

fn function_values<F: DiskFunction + ?Sized>(f: &F, points: &PointSet) -> Result<Vec<Complex64>> {
    points.points().iter().map(|&p| f.value(p)).collect()
}

/// Tests `conj(f(w)) f(z) <= c^2 K(z, w)` on the grid, i.e. `f in H(K)` with norm at most `c`.
pub fn membership_check<F: DiskFunction + ?Sized>(
    f: &F,
    kernel: &KernelExpr,
    c: f64,
    points: &PointSet,
) -> Result<PsdVerdict> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "norm bound {c} must be positive"
        )));
    }
    let g = gram(kernel, points)?;
    let v = function_values(f, points)?;
    let n = v.len();
    let m = CMatrix::from_fn(n, n, |i, j| {
        g.matrix()[(i, j)] * (c * c) - v[i] * v[j].conj()
    });
    is_psd(&GramMatrix::from_matrix(m)?, DEFAULT_TOL)
}

/// Tests `(delta^2 - phi(z) conj(phi(w))) K(z, w) >= 0` on the grid, i.e. multiplier norm at most `delta`.
pub fn multiplier_check<F: DiskFunction + ?Sized>(
    phi: &F,
    kernel: &KernelExpr,
    delta: f64,
    points: &PointSet,
) -> Result<PsdVerdict> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "multiplier bound {delta} must be positive"
        )));
    }
    let g = gram(kernel, points)?;
    let v = function_values(phi, points)?;
    let n = v.len();
    let m = CMatrix::from_fn(n, n, |i, j| {
        (Complex64::new(delta * delta, 0.0) - v[i] * v[j].conj()) * g.matrix()[(i, j)]
    });
    is_psd(&GramMatrix::from_matrix(m)?, DEFAULT_TOL)
}

/// Escalating grids used to search for refutations; failures concentrate near the boundary.
///
/// Rung `k` carries four rings at `r_k * j / 4` (j = 1..4), 96 angles each,
/// with `r_k` running 0.5, 0.6, ..., 0.9, 0.95.
pub fn refutation_ladder() -> Vec<GridSpec> {
    [0.5, 0.6, 0.7, 0.8, 0.9, 0.95]
        .iter()
        .map(|&r: &f64| {
            let radii = (1..=4).map(|j| r * j as f64 / 4.0).collect();
            GridSpec::radial(radii, 96)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderOutcome {
    /// First grid on which the check failed, if any.
    pub refuted_by: Option<GridSpec>,
    pub verdicts: Vec<(GridSpec, PsdVerdict)>,
}

impl LadderOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "refuted_by": self.refuted_by.as_ref().map(GridSpec::to_json),
            "rungs": self
                .verdicts
                .iter()
                .map(|(g, v)| json!({"grid": g.to_json(), "verdict": v}))
                .collect::<Vec<_>>(),
        })
    }
}

fn scan_ladder(mut check: impl FnMut(&PointSet) -> Result<PsdVerdict>) -> Result<LadderOutcome> {
    let mut verdicts = Vec::new();
    for spec in refutation_ladder() {
        let points = crate::kernels::sample_grid(&spec)?;
        let verdict = check(&points)?;
        verdicts.push((spec.clone(), verdict));
        if !verdict.is_psd {
            return Ok(LadderOutcome {
                refuted_by: Some(spec),
                verdicts,
            });
        }
    }
    Ok(LadderOutcome {
        refuted_by: None,
        verdicts,
    })
}

pub fn refute_membership<F: DiskFunction + ?Sized>(
    f: &F,
    kernel: &KernelExpr,
    c: f64,
) -> Result<LadderOutcome> {
    scan_ladder(|p| membership_check(f, kernel, c, p))
}

pub fn refute_multiplier<F: DiskFunction + ?Sized>(
    phi: &F,
    kernel: &KernelExpr,
    delta: f64,
) -> Result<LadderOutcome> {
    scan_ladder(|p| multiplier_check(phi, kernel, delta, p))
}
