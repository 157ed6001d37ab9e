use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quasistab::cubic::{cubic_approximant, verify_stability, PerturbationBound, StabilityConfig};
use quasistab::function_spaces::{lhalf_norm, sampled_corpus};
use quasistab::{chain_metric, PointwisePolynomial, QuasiNormedSpace};
use quasistab_bench::squared_line;

fn chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_metric");
    for n in [16, 64, 128] {
        let space = squared_line(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, s| b.iter(|| chain_metric(black_box(s))));
    }
    group.finish();
}

fn lhalf(c: &mut Criterion) {
    let x = sampled_corpus(7, 1024).remove(3);
    c.bench_function("lhalf_norm/1024", |b| b.iter(|| lhalf_norm(black_box(&x), 1024)));
}

fn approximant(c: &mut Criterion) {
    let space = QuasiNormedSpace::lhalf(1024).unwrap();
    let f = PointwisePolynomial::cubic_plus_linear(1.0, 1.0);
    let grid = sampled_corpus(7, 1024);
    c.bench_function("cubic_approximant/lhalf_corpus", |b| {
        b.iter(|| cubic_approximant(&f, &space, 2.0, black_box(&grid), 200, 1e-9 / 8.0))
    });
}

fn certificate(c: &mut Criterion) {
    let space = QuasiNormedSpace::lhalf(256).unwrap();
    let f = PointwisePolynomial::cubic_plus_linear(1.0, 1.0);
    let phi = PerturbationBound::shift_norm(12.0, 2.0, space.clone()).unwrap();
    let config = StabilityConfig::new(2.0, 0.25, space, 1e-9).unwrap();
    let grid = sampled_corpus(7, 256);
    let mut group = c.benchmark_group("verify_stability");
    group.sample_size(10);
    group.bench_function("lhalf_256", |b| b.iter(|| verify_stability(&f, &phi, &config, black_box(&grid))));
    group.finish();
}

criterion_group!(benches, chain, lhalf, approximant, certificate);
criterion_main!(benches);
