//! Compares the rayon path of the tableau weight sums against the
//! sequential reference on the two characteristic workloads: a flag-heavy
//! shape that forces direct enumeration, and a grid-style shape that takes
//! the grouped summation. Build with `--no-default-features` to measure the
//! pure sequential build (both entry points then coincide).

use criterion::{criterion_group, criterion_main, Criterion};
use schurq::shapes::FlaggedStrictPartition;
use schurq::tableaux::{q_flagged_tableau, q_flagged_tableau_seq};

fn bench_direct_enumeration(c: &mut Criterion) {
    // lambda_i <= f_i everywhere, so the sum cannot factor over the
    // unmarked part and every tableau is visited
    let shape = FlaggedStrictPartition::new(vec![5, 3], vec![5, 3]).unwrap();
    let mut group = c.benchmark_group("weight-sum/direct");
    group.sample_size(10);
    group.bench_function("rayon", |b| b.iter(|| q_flagged_tableau(&shape, 2)));
    group.bench_function("sequential", |b| b.iter(|| q_flagged_tableau_seq(&shape, 2)));
    group.finish();
}

fn bench_grouped_summation(c: &mut Criterion) {
    let shape = FlaggedStrictPartition::new(vec![5, 4, 3], vec![3, 2, 1]).unwrap();
    let mut group = c.benchmark_group("weight-sum/grouped");
    group.sample_size(10);
    group.bench_function("rayon", |b| b.iter(|| q_flagged_tableau(&shape, 3)));
    group.bench_function("sequential", |b| b.iter(|| q_flagged_tableau_seq(&shape, 3)));
    group.finish();
}

criterion_group!(benches, bench_direct_enumeration, bench_grouped_summation);
criterion_main!(benches);
