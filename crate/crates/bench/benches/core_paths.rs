use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use std::hint::black_box;

use thue_bench::fixture_forms;
use thue_core::bounds::{theorem_bound, BoundInputs, Theorem};
use thue_core::invariants::{discriminant, mahler_measure_with};
use thue_core::roots::Precision;
use thue_core::solver::enumerate_box;

fn bench_discriminant(c: &mut Criterion) {
    let mut g = c.benchmark_group("discriminant");
    for (name, f) in fixture_forms() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| {
            b.iter(|| discriminant(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn bench_mahler(c: &mut Criterion) {
    let mut g = c.benchmark_group("mahler_measure");
    for (name, f) in fixture_forms() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| {
            b.iter(|| mahler_measure_with(black_box(f), 1e-12, Precision::default()).unwrap())
        });
    }
    g.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_box");
    g.sample_size(20);
    let h = BigInt::from(100);
    for (name, f) in fixture_forms() {
        for b_max in [1_000u64, 100_000] {
            let id = BenchmarkId::new(name, b_max);
            g.bench_with_input(id, &(f.clone(), b_max), |b, (f, b_max)| {
                b.iter(|| enumerate_box(black_box(f), &h, *b_max).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_theorem_bound(c: &mut Criterion) {
    let mut g = c.benchmark_group("theorem_bound");
    let h = BigInt::from(1_000_000);
    for (name, f) in fixture_forms() {
        let inputs = BoundInputs::from_form(&f, &h).unwrap();
        for t in [Theorem::T1, Theorem::T2, Theorem::T3] {
            let id = BenchmarkId::new(name, format!("{t:?}"));
            g.bench_function(id, |b| {
                b.iter(|| theorem_bound(t, inputs.r, inputs.s, black_box(&h), &inputs.abs_disc, &inputs.height))
            });
        }
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_discriminant,
    bench_mahler,
    bench_enumerate,
    bench_theorem_bound
);
criterion_main!(benches);
