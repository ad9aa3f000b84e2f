//! Sequential against rayon-parallel: exact search and grid scans.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starpcg::solver::{grid_upper_bound_with, is_star_k_with, Mode, SolverOptions};
use starpcg::Graph;

fn options(parallel: bool) -> SolverOptions {
    SolverOptions {
        parallel,
        ..SolverOptions::default()
    }
}

fn exact_search(c: &mut Criterion) {
    let cases = [
        ("spider-k1", Graph::spider(&[2, 2, 2]).unwrap(), 1),
        ("c6-k2", Graph::cycle(6).unwrap(), 2),
        ("p8-k1", Graph::path(8).unwrap(), 1),
        ("co-c7-k2", Graph::cycle(7).unwrap().complement(), 2),
    ];
    let mut group = c.benchmark_group("is_star_k");
    group.sample_size(10);
    for (name, g, k) in &cases {
        for (label, parallel) in [("sequential", false), ("parallel", true)] {
            let opts = options(parallel);
            group.bench_with_input(BenchmarkId::new(label, name), g, |b, g| {
                b.iter(|| is_star_k_with(black_box(g), *k, Mode::Any, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn grid_scan(c: &mut Criterion) {
    // C5 with w_max = 12 enumerates all 12^5 vectors (no k = 1 exists).
    let cases = [
        ("c5-w12", Graph::cycle(5).unwrap(), 12),
        ("c6-w8", Graph::cycle(6).unwrap(), 8),
    ];
    let mut group = c.benchmark_group("grid_upper_bound");
    group.sample_size(10);
    for (name, g, w_max) in &cases {
        for (label, parallel) in [("sequential", false), ("parallel", true)] {
            group.bench_with_input(BenchmarkId::new(label, name), g, |b, g| {
                b.iter(|| grid_upper_bound_with(black_box(g), *w_max, parallel).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, exact_search, grid_scan);
criterion_main!(benches);
