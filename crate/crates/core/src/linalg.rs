//! Dense Hermitian helpers over `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Hermitian eigendecomposition with eigenvalues in ascending order.
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn ensure_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn eigh(m: &CMatrix) -> Result<Eigh> {
    ensure_finite(m)?;
    let n = m.nrows();
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Eigh { values, vectors })
}

pub fn eigvalsh(m: &CMatrix) -> Result<Vec<f64>> {
    ensure_finite(m)?;
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> Result<f64> {
    let gram = m * m.adjoint();
    Ok(eigvalsh(&gram)?
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(0.0)
        .sqrt())
}

/// Spectral norm of a Hermitian matrix: largest eigenvalue modulus.
pub fn hermitian_norm(m: &CMatrix) -> Result<f64> {
    let values = eigvalsh(m)?;
    Ok(values.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complex_hermitian_eigenpairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 12;
        let a = CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let h = hermitian_part(&a);
        let e = eigh(&h).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        for k in 0..n {
            let v = e.vectors.column(k);
            let resid = &h * v - v * Complex64::new(e.values[k], 0.0);
            assert!(resid.norm() < 1e-12, "residual {}", resid.norm());
        }
        let unitary = e.vectors.adjoint() * &e.vectors;
        assert!((unitary - CMatrix::identity(n, n)).norm() < 1e-12);
        let vals = eigvalsh(&h).unwrap();
        for (a, b) in vals.iter().zip(&e.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_nan() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(eigvalsh(&m).unwrap_err(), Error::NonFinite);
    }
}
