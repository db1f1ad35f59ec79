#![allow(dead_code)]

use std::f64::consts::TAU;

use diskernel::{
    AtomicSingularInner, BlaschkeProduct, KernelExpr, SchurFunction, TaylorPolynomial,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Uniform point in the disk of radius `rmax`.
pub fn random_point(rng: &mut ChaCha8Rng, rmax: f64) -> Complex64 {
    let r = rmax * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

pub fn random_unimodular(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, TAU * rng.random::<f64>())
}

pub fn random_blaschke(rng: &mut ChaCha8Rng, max_degree: usize, rmax: f64) -> BlaschkeProduct {
    let degree = rng.random_range(1..=max_degree);
    let zeros = (0..degree).map(|_| random_point(rng, rmax)).collect();
    BlaschkeProduct::new(zeros, random_unimodular(rng)).unwrap()
}

/// Polynomial with coefficient l1 norm at most 1, hence Schur class.
pub fn random_schur_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> TaylorPolynomial {
    let raw: Vec<Complex64> = (0..=degree).map(|_| random_point(rng, 1.0)).collect();
    let l1: f64 = raw.iter().map(|z| z.norm()).sum();
    let scale = rng.random_range(0.2..0.999) / l1;
    TaylorPolynomial::new(raw.into_iter().map(|z| z * scale).collect()).unwrap()
}

/// Cycles through Blaschke, atomic, polynomial and constant symbols.
pub fn random_schur(rng: &mut ChaCha8Rng, kind: usize) -> SchurFunction {
    match kind % 4 {
        0 => SchurFunction::Blaschke(random_blaschke(rng, 4, 0.9)),
        1 => SchurFunction::Atomic(
            AtomicSingularInner::new(rng.random_range(0.1..2.0), random_unimodular(rng)).unwrap(),
        ),
        2 => SchurFunction::Polynomial(random_schur_polynomial(rng, 4)),
        _ => SchurFunction::constant(random_point(rng, 0.99)).unwrap(),
    }
}

// proptest strategies

pub fn disk_point(rmax: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..TAU).prop_map(move |(u, t)| Complex64::from_polar(rmax * u.sqrt(), t))
}

pub fn unimodular() -> impl Strategy<Value = Complex64> {
    (0.0..TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

pub fn blaschke(max_degree: usize, rmax: f64) -> impl Strategy<Value = BlaschkeProduct> {
    (
        prop::collection::vec(disk_point(rmax), 1..=max_degree),
        unimodular(),
    )
        .prop_map(|(zeros, u)| BlaschkeProduct::new(zeros, u).unwrap())
}

pub fn atomic() -> impl Strategy<Value = AtomicSingularInner> {
    (0.1..3.0f64, unimodular()).prop_map(|(m, xi)| AtomicSingularInner::new(m, xi).unwrap())
}

pub fn schur_polynomial() -> impl Strategy<Value = TaylorPolynomial> {
    (prop::collection::vec(disk_point(1.0), 1..6), 0.05..0.999f64).prop_map(|(raw, target)| {
        let l1: f64 = raw.iter().map(|z| z.norm()).sum::<f64>().max(1e-3);
        TaylorPolynomial::new(raw.into_iter().map(|z| z * (target / l1)).collect()).unwrap()
    })
}

pub fn schur() -> impl Strategy<Value = SchurFunction> {
    prop_oneof![
        blaschke(4, 0.9).prop_map(SchurFunction::Blaschke),
        atomic().prop_map(SchurFunction::Atomic),
        schur_polynomial().prop_map(SchurFunction::Polynomial),
        disk_point(0.99).prop_map(|z| SchurFunction::constant(z).unwrap()),
    ]
}

fn leaf_kernel() -> impl Strategy<Value = KernelExpr> {
    prop_oneof![
        Just(KernelExpr::szego()),
        (-1.0..3.0f64).prop_map(|a| KernelExpr::weighted_bergman(a).unwrap()),
        schur().prop_map(KernelExpr::de_branges_rovnyak),
        (schur(), 0.0..3.0f64).prop_map(|(b, a)| KernelExpr::sub_bergman(b, a).unwrap()),
    ]
}

/// Random kernel expressions without difference nodes.
pub fn positive_kernel() -> impl Strategy<Value = KernelExpr> {
    leaf_kernel().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| KernelExpr::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| KernelExpr::schur(a, b)),
            (0.0..5.0f64, inner.clone()).prop_map(|(s, k)| KernelExpr::scale(s, k).unwrap()),
            (schur(), inner).prop_map(|(f, k)| KernelExpr::conjugate_scale(f, k)),
        ]
    })
}
