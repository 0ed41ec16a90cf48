use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use corematch::graph::{core_numbers, k_core};
use corematch::matching::brute_force_k_core_estimator;
use corematch::models::{build_probabilities, sample_correlated_pair, sample_graph, ModelSpec};
use corematch::RngStream;

fn peeling(c: &mut Criterion) {
    let mut group = c.benchmark_group("k_core");
    for n in [1_000usize, 4_000] {
        let probs = build_probabilities(&ModelSpec::er(n, 20.0 / n as f64)).unwrap();
        let g = sample_graph(&probs, &RngStream::new(1, 0));
        group.bench_with_input(BenchmarkId::new("k=5", n), &g, |b, g| {
            b.iter(|| k_core(black_box(g), 5))
        });
        group.bench_with_input(BenchmarkId::new("core_numbers", n), &g, |b, g| {
            b.iter(|| core_numbers(black_box(g)))
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlated_pair");
    group.sample_size(20);
    for n in [500usize, 2_000] {
        let probs = build_probabilities(&ModelSpec::er(n, 10.0 / n as f64)).unwrap();
        let mut index = 0u64;
        group.bench_with_input(BenchmarkId::from_parameter(n), &probs, |b, probs| {
            b.iter(|| {
                index += 1;
                sample_correlated_pair(probs, 0.9, &RngStream::new(7, index)).unwrap()
            })
        });
    }
    group.finish();
}

fn estimator(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_estimator");
    group.sample_size(10);
    for n in [6usize, 8] {
        let probs = build_probabilities(&ModelSpec::er(n, 0.7)).unwrap();
        let pair = sample_correlated_pair(&probs, 0.9, &RngStream::new(3, 0)).unwrap();
        group.bench_function(BenchmarkId::new("k=2", n), |b| {
            b.iter(|| brute_force_k_core_estimator(black_box(&pair.g1), black_box(&pair.g2), 2))
        });
    }
    group.finish();
}

criterion_group!(benches, peeling, sampling, estimator);
criterion_main!(benches);
