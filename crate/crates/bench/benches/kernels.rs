use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use degamma_core::distribution::{moment_quadrature, Sampler};
use degamma_core::stirling::parse_rational;
use degamma_core::{
    cdf, gamma_classical, gamma_degen_with, identity_rhs, reg_incomplete_beta, stirling_triangle,
    stream_rng, DistParams, GammaMethod, StirlingKind, ToleranceConfig,
};
use rand::Rng;

fn special_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("special");
    group.bench_function("gamma_classical", |b| {
        b.iter(|| gamma_classical(black_box(7.3)))
    });
    group.bench_function("reg_incomplete_beta", |b| {
        b.iter(|| reg_incomplete_beta(black_box(0.3), black_box(2.5), black_box(7.5)))
    });
    group.finish();
}

fn gamma_lambda(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_lambda");
    for method in [
        GammaMethod::BetaClosedForm,
        GammaMethod::Recurrence,
        GammaMethod::Quadrature,
    ] {
        group.bench_function(method.to_string(), |b| {
            b.iter(|| gamma_degen_with(black_box(3.7), black_box(0.2), method))
        });
    }
    group.finish();
}

fn distribution(c: &mut Criterion) {
    let p = DistParams::new(2.0, 1.0, 0.1).unwrap();
    let mut group = c.benchmark_group("distribution");
    group.bench_function("cdf", |b| b.iter(|| cdf(&p, black_box(5.0))));
    group.bench_function("moment_quadrature_n4", |b| {
        b.iter(|| moment_quadrature(&p, black_box(4), &ToleranceConfig::default()))
    });
    let sampler = Sampler::new(&p);
    group.bench_function("sample_10k", |b| {
        b.iter_batched(
            || stream_rng(42, 0),
            |mut rng| (0..10_000).map(|_| sampler.draw(&mut rng)).sum::<f64>(),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("cdf_random_points", |b| {
        let mut rng = stream_rng(7, 0);
        b.iter(|| cdf(&p, rng.random_range(0.0..50.0)))
    });
    group.finish();
}

fn stirling(c: &mut Criterion) {
    let lambda = parse_rational("3/7").unwrap();
    let alpha = parse_rational("7/3").unwrap();
    let mut group = c.benchmark_group("stirling");
    group.bench_function("degenerate_second_n20", |b| {
        b.iter(|| stirling_triangle(StirlingKind::DegenerateSecond, &lambda, black_box(20)))
    });
    group.bench_function("identity_rhs_k8", |b| {
        b.iter(|| identity_rhs(black_box(8), &alpha, &lambda))
    });
    group.finish();
}

criterion_group!(
    benches,
    special_functions,
    gamma_lambda,
    distribution,
    stirling
);
criterion_main!(benches);
