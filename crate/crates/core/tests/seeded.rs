mod common;

use common::*;
use diskernel::kernels::{gram, KernelExpr, PointSet};
use diskernel::operators::{defect, eigenvector_check, SpaceWeight};
use diskernel::report::canonical_json;
use diskernel::verify::{verify_m1, zero_kernel_chain_check, CONVERSE_RADII};
use diskernel::{series, AnalyticFunction, DiskPoint, NormalizedZeroKernel, SchurFunction};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn range_norm_is_sandwiched_by_the_hardy_norm() {
    let b = SchurFunction::monomial(2).unwrap();
    let d = defect(&b, &SpaceWeight::new(0.0, 32).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let degree = rng.random_range(0..=32);
        let f: Vec<Complex64> = (0..=degree).map(|_| random_point(&mut rng, 1.0)).collect();
        let hardy = series::hardy_inner(&f, &f).re;
        let range = d.range_norm(&f).unwrap().powi(2);
        assert!(range <= hardy * (1.0 + 1e-12), "{range} > {hardy}");
        assert!(hardy <= 2.0 * range + 1e-8, "{hardy} > 2 * {range}");
    }
}

#[test]
fn zero_kernel_scaling_is_dominated() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let grid = PointSet::default_grid();
    for i in 0..20 {
        let mut b = random_schur(&mut rng, i % 3);
        while b.value_at_origin().unwrap().norm() < 1e-3 {
            b = random_schur(&mut rng, i % 3);
        }
        let f0 = NormalizedZeroKernel::new(b.clone()).unwrap();
        let kernel = KernelExpr::conjugate_scale(
            AnalyticFunction::ZeroKernel(f0.clone()),
            KernelExpr::szego(),
        );
        let z = DiskPoint::new(random_point(&mut rng, 0.95)).unwrap();
        let w = DiskPoint::new(random_point(&mut rng, 0.95)).unwrap();
        let closed = f0.eval(w).unwrap().conj() * f0.eval(z).unwrap()
            / (Complex64::new(1.0, 0.0) - w.value().conj() * z.value());
        let got = kernel.eval(z, w).unwrap();
        assert!((got - closed).norm() <= 1e-12 * closed.norm().max(1.0));

        let check = zero_kernel_chain_check(&b, &grid).unwrap();
        assert!(check.difference.is_psd, "{b}: {:?}", check.difference);
        assert!(check.pointwise_error <= 1e-12);
    }
}

#[test]
fn identity_symbol_reproduces_the_szego_gram() {
    let grid = PointSet::default_grid();
    let sub = KernelExpr::sub_bergman(SchurFunction::monomial(1).unwrap(), 0.0).unwrap();
    let a = gram(&sub, &grid).unwrap();
    let b = gram(&KernelExpr::szego(), &grid).unwrap();
    assert!((a.matrix() - b.matrix()).iter().all(|d| d.norm() <= 1e-13));
}

#[test]
fn kernel_eigenvector_residual_shrinks_with_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let b = SchurFunction::Blaschke(random_blaschke(&mut rng, 3, 0.8));
        let w = DiskPoint::new(random_point(&mut rng, 0.7)).unwrap();
        let alpha = rng.random_range(-1.0..2.0);
        let coarse = eigenvector_check(&b, &SpaceWeight::new(alpha, 32).unwrap(), w).unwrap();
        let fine = eigenvector_check(&b, &SpaceWeight::new(alpha, 64).unwrap(), w).unwrap();
        assert!(fine <= coarse + 1e-15, "{fine} > {coarse}");
        assert!(fine <= 1e-6, "{fine}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let b = random_schur(&mut ChaCha8Rng::seed_from_u64(24), 1);
    let grid = diskernel::sample_grid(&diskernel::GridSpec::random(30, 0.9, 5)).unwrap();
    let first = canonical_json(&verify_m1(&b, &grid, &CONVERSE_RADII).unwrap().to_json());
    let grid = diskernel::sample_grid(&diskernel::GridSpec::random(30, 0.9, 5)).unwrap();
    let second = canonical_json(&verify_m1(&b, &grid, &CONVERSE_RADII).unwrap().to_json());
    assert_eq!(first, second);
}
