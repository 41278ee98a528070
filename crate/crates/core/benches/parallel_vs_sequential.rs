//! Parallel vs sequential timings for the data-parallel kernels.
//!
//! The default `parallel` feature routes the pair scan, the two-modulus
//! transform, and the grid evaluation through rayon; the `_seq` twins are
//! the single-threaded fallbacks. Results are bit-identical either way,
//! so these benches are purely about throughput.
//!
//! Run with `cargo bench -p ap3lab`.

use ap3lab::ap::{
    count_triples_bruteforce, count_triples_bruteforce_seq, count_triples_convolution,
    count_triples_convolution_seq, discrepancy, discrepancy_seq,
};
use ap3lab::construct::{family, FamilySpec};
use ap3lab::intset::{density, IntegerSet};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn bench_pair_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("triples_pair_scan");
    group.sample_size(10);
    for &n in &[1_000u64, 4_000] {
        let set = family(&FamilySpec::random(n, 0.5, 0xBEEF)).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &set, |b, s| {
            b.iter(|| black_box(count_triples_bruteforce(black_box(s))))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &set, |b, s| {
            b.iter(|| black_box(count_triples_bruteforce_seq(black_box(s))))
        });
    }
    group.finish();
}

fn bench_convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("triples_convolution");
    group.sample_size(10);
    for &n in &[10_000u64, 100_000] {
        let set = family(&FamilySpec::random(n, 0.3, 0xF00D)).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &set, |b, s| {
            b.iter(|| black_box(count_triples_convolution(black_box(s))))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &set, |b, s| {
            b.iter(|| black_box(count_triples_convolution_seq(black_box(s))))
        });
    }
    group.finish();
}

fn bench_discrepancy_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("discrepancy_grid");
    group.sample_size(10);
    let n = 2_000u64;
    let set = IntegerSet::from_sorted((1..=n).filter(|v| v % 3 != 0).collect()).unwrap();
    let c_density = density(&set, n);
    let grid = 4 * n + 1;
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(discrepancy(black_box(&set), n, &c_density, grid).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(discrepancy_seq(black_box(&set), n, &c_density, grid).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_pair_scan,
    bench_convolution,
    bench_discrepancy_grid
);
criterion_main!(benches);
