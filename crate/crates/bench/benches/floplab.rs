use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use floplab_core::{canonical_key, census, explore, initial_configuration, ExploreOptions, GroupParams, KeyMode};

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    for (m, n) in [(2, 4), (3, 5), (2, 7)] {
        let params = GroupParams::new(m, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("m{m}n{n}")), &params, |b, &p| {
            b.iter(|| census(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn bench_explore(c: &mut Criterion) {
    let mut group = c.benchmark_group("explore");
    group.sample_size(20);
    for k in [3, 5] {
        let start = initial_configuration(k).unwrap();
        for (name, mode) in [("identity", KeyMode::Identity), ("iso", KeyMode::Isomorphism)] {
            let opts = ExploreOptions { mode, simultaneous: true, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(name, k), &start, |b, s| b.iter(|| explore(s, opts).unwrap()));
        }
    }
    group.finish();
}

fn bench_canonical_key(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_key");
    for k in [2, 4, 6] {
        let config = initial_configuration(k).unwrap();
        for (name, mode) in [("identity", KeyMode::Identity), ("iso", KeyMode::Isomorphism)] {
            group.bench_with_input(BenchmarkId::new(name, k), &config, |b, cfg| {
                b.iter(|| canonical_key(black_box(cfg), mode))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_census, bench_explore, bench_canonical_key);
criterion_main!(benches);
