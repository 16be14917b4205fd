use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use schubitope::{hrep, theta, vertices, Subset};
use schubitope_bench::corpus;

fn bench_vertices(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertices");
    group.sample_size(10);
    for (name, d) in corpus(7) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &d, |b, d| {
            b.iter(|| vertices(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn bench_hrep(c: &mut Criterion) {
    let mut group = c.benchmark_group("hrep");
    for (name, d) in corpus(8) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &d, |b, d| {
            b.iter(|| hrep(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn bench_theta(c: &mut Criterion) {
    let (_, d) = corpus(8).pop().unwrap();
    let s = Subset::from_elements(8, [1, 3, 4, 7]).unwrap();
    c.bench_function("theta/single-subset", |b| {
        b.iter(|| theta(black_box(&d), black_box(s)))
    });
}

criterion_group!(benches, bench_vertices, bench_hrep, bench_theta);
criterion_main!(benches);
