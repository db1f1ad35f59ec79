//! Orthonormal bases of H(b) for finite Blaschke products.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::{blaschke_ratio, mobius, BlaschkeProduct, DiskPoint, SchurFunction};
use crate::kernels::{KernelExpr, PointSet};
use crate::linalg::CMatrix;
use crate::series;

/// Taylor degree used for H² inner products between basis elements.
pub const GRAM_DEGREE: usize = 256;

/// One Takenaka-Malmquist function:
/// `normalization / (1 - conj(pole) z) * prod_k mobius(prefix_k, z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelElement {
    #[serde(serialize_with = "ser_complex_list")]
    pub prefix: Vec<Complex64>,
    #[serde(serialize_with = "ser_complex")]
    pub pole: Complex64,
    pub normalization: f64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_complex_list<S: serde::Serializer>(
    zs: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    zs.iter()
        .map(|z| [z.re, z.im])
        .collect::<Vec<_>>()
        .serialize(s)
}

impl ModelElement {
    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        let z = z.value();
        let head = self.normalization / (Complex64::new(1.0, 0.0) - self.pole.conj() * z);
        self.prefix.iter().fold(head, |acc, &a| acc * mobius(a, z))
    }

    pub fn taylor(&self, len: usize) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = series::geometric(self.pole.conj(), len)
            .into_iter()
            .map(|c| c * self.normalization)
            .collect();
        for &a in &self.prefix {
            out = series::mul(&out, &series::mobius_factor(a, len), len);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelBasis {
    b: BlaschkeProduct,
    elements: Vec<ModelElement>,
}

pub fn takenaka_malmquist(b: &BlaschkeProduct) -> Result<ModelBasis> {
    let zeros = b.zeros();
    if zeros.is_empty() {
        return Err(Error::InvalidBlaschke("model space of degree 0".into()));
    }
    let elements = zeros
        .iter()
        .enumerate()
        .map(|(n, &pole)| ModelElement {
            prefix: zeros[..n].to_vec(),
            pole,
            normalization: (1.0 - pole.norm_sqr()).sqrt(),
        })
        .collect();
    Ok(ModelBasis {
        b: b.clone(),
        elements,
    })
}

/// H² Gram matrix of a basis together with a bound on the neglected tail.
#[derive(Debug, Clone)]
pub struct BasisGram {
    pub matrix: CMatrix,
    pub tail_estimate: f64,
}

impl ModelBasis {
    pub fn blaschke(&self) -> &BlaschkeProduct {
        &self.b
    }

    pub fn elements(&self) -> &[ModelElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn eval_all(&self, z: DiskPoint) -> Vec<Complex64> {
        self.elements.iter().map(|e| e.eval(z)).collect()
    }

    /// Pairing of Taylor coefficients up to `degree`; the tail estimate sums the
    /// geometric continuation of the last coefficient of each element.
    pub fn gram(&self, degree: usize) -> BasisGram {
        let len = degree + 1;
        let coeffs: Vec<Vec<Complex64>> = self.elements.iter().map(|e| e.taylor(len)).collect();
        let n = self.dim();
        let matrix = CMatrix::from_fn(n, n, |r, c| series::hardy_inner(&coeffs[r], &coeffs[c]));
        let rho = self
            .b
            .zeros()
            .iter()
            .map(|a| a.norm())
            .fold(0.0f64, f64::max);
        let tail_estimate = if rho == 0.0 {
            0.0
        } else {
            let last = coeffs
                .iter()
                .map(|c| c.last().map_or(0.0, |v| v.norm_sqr()))
                .fold(0.0f64, f64::max);
            // polynomial-times-geometric growth is absorbed by the (degree+1)^2 factor
            last * rho * rho / (1.0 - rho * rho) * (len * len) as f64
        };
        BasisGram {
            matrix,
            tail_estimate,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "b": SchurFunction::Blaschke(self.b.clone()).to_string(),
            "elements": serde_json::to_value(&self.elements).expect("plain data"),
        })
    }
}

/// Max over `P x P` of `|sum_n conj(e_n(w)) e_n(z) - k^b(z, w)|` for the de Branges-Rovnyak kernel.
pub fn onb_sum_check(b: &BlaschkeProduct, points: &PointSet) -> Result<f64> {
    let basis = takenaka_malmquist(b)?;
    let kernel = KernelExpr::de_branges_rovnyak(SchurFunction::Blaschke(b.clone()));
    let values: Vec<Vec<Complex64>> = points.points().iter().map(|&p| basis.eval_all(p)).collect();
    let mut worst = 0.0f64;
    for (i, &z) in points.points().iter().enumerate() {
        for (j, &w) in points.points().iter().enumerate() {
            let sum: Complex64 = values[i]
                .iter()
                .zip(&values[j])
                .map(|(ez, ew)| ew.conj() * ez)
                .sum();
            worst = worst.max((sum - kernel.eval(z, w)?).norm());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointwiseBound {
    /// Max over the grid of `sum_n |e_n(w)|^2`.
    pub constant: f64,
    /// Max deviation of that sum from the Blaschke ratio at the same point.
    pub identity_error: f64,
}

pub fn pointwise_bound_constant(b: &BlaschkeProduct, points: &PointSet) -> Result<PointwiseBound> {
    let basis = takenaka_malmquist(b)?;
    let symbol = SchurFunction::Blaschke(b.clone());
    let mut constant = 0.0f64;
    let mut identity_error = 0.0f64;
    for &w in points.points() {
        let sum: f64 = basis.eval_all(w).iter().map(|v| v.norm_sqr()).sum();
        constant = constant.max(sum);
        identity_error = identity_error.max((sum - blaschke_ratio(&symbol, w)?).abs());
    }
    Ok(PointwiseBound {
        constant,
        identity_error,
    })
}
