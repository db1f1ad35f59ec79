use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diskernel::kernels::{gram, sample_grid, GridSpec, KernelExpr, PointSet};
use diskernel::modelspace::{onb_sum_check, takenaka_malmquist, GRAM_DEGREE};
use diskernel::operators::{defect, SpaceWeight};
use diskernel::psd::{dominance_delta_min, is_psd, DEFAULT_TOL};
use diskernel::{BlaschkeProduct, Complex64, SchurFunction};

fn blaschke() -> BlaschkeProduct {
    let zeros = vec![
        Complex64::new(0.5, 0.2),
        Complex64::new(-0.3, 0.6),
        Complex64::new(0.0, -0.7),
        Complex64::new(0.8, 0.0),
    ];
    BlaschkeProduct::new(zeros, Complex64::new(1.0, 0.0)).unwrap()
}

fn grid(n_angles: usize) -> PointSet {
    sample_grid(&GridSpec::radial(vec![0.2, 0.4, 0.6, 0.8, 0.9], n_angles)).unwrap()
}

fn bench_gram(c: &mut Criterion) {
    let kernel = KernelExpr::sub_bergman(SchurFunction::Blaschke(blaschke()), 1.0).unwrap();
    let mut group = c.benchmark_group("gram_and_psd");
    for angles in [16, 32, 64] {
        let points = grid(angles);
        group.bench_with_input(BenchmarkId::new("gram", points.len()), &points, |b, p| {
            b.iter(|| gram(black_box(&kernel), p).unwrap())
        });
        let g = gram(&kernel, &points).unwrap();
        group.bench_with_input(BenchmarkId::new("is_psd", points.len()), &g, |b, g| {
            b.iter(|| is_psd(black_box(g), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn bench_dominance(c: &mut Criterion) {
    let k1 = KernelExpr::weighted_bergman(0.0).unwrap();
    let k2 = KernelExpr::sub_bergman(SchurFunction::Blaschke(blaschke()), 1.0).unwrap();
    let points = grid(16);
    c.bench_function("dominance_80", |b| {
        b.iter(|| dominance_delta_min(black_box(&k1), &k2, &points).unwrap())
    });
}

fn bench_operators(c: &mut Criterion) {
    let b = SchurFunction::Blaschke(blaschke());
    let mut group = c.benchmark_group("defect");
    for degree in [64, 128, 256] {
        let weight = SpaceWeight::new(0.0, degree).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(degree), &weight, |bch, w| {
            bch.iter(|| defect(black_box(&b), w).unwrap())
        });
    }
    group.finish();
}

fn bench_modelspace(c: &mut Criterion) {
    let b = blaschke();
    let points = PointSet::default_grid();
    c.bench_function("onb_sum_check_default_grid", |bch| {
        bch.iter(|| onb_sum_check(black_box(&b), &points).unwrap())
    });
    let basis = takenaka_malmquist(&b).unwrap();
    c.bench_function("basis_gram_256", |bch| {
        bch.iter(|| black_box(&basis).gram(GRAM_DEGREE))
    });
}

criterion_group!(
    benches,
    bench_gram,
    bench_dominance,
    bench_operators,
    bench_modelspace
);
criterion_main!(benches);
