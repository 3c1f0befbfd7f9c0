use std::hint::black_box;

use addiso_core::codes::space_tuple;
use addiso_core::isometry::{is_extendible_bruteforce, is_isometry_direct};
use addiso_core::kspace::{enumerate_subspaces, rref, KMatrix};
use addiso_core::solutions::{build_counterexample, indicator_table};
use addiso_core::sweep::sweep_theorem;
use addiso_core::{make_field_pair, FieldK, KElem, SweepParams};
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_rref(c: &mut Criterion) {
    let f = FieldK::with_order(3).unwrap();
    // deterministic dense 12 x 16 matrix
    let data: Vec<KElem> = (0..12 * 16u32).map(|i| KElem((i * 7 + i / 5) % 3)).collect();
    let m = KMatrix::from_data(12, 16, data).unwrap();
    c.bench_function("rref 12x16 over F_3", |b| b.iter(|| rref(&f, black_box(&m))));
}

fn bench_subspaces(c: &mut Criterion) {
    let f = FieldK::prime(2).unwrap();
    c.bench_function("all subspaces of F_2^6", |b| b.iter(|| enumerate_subspaces(&f, black_box(6), None).unwrap()));
}

fn bench_indicator(c: &mut Criterion) {
    let (_, l) = make_field_pair(3, 1, 2, None, None).unwrap();
    let f = build_counterexample(&l, 6).unwrap();
    let tuple = space_tuple(f.source());
    c.bench_function("indicator table, F_9 counterexample", |b| {
        b.iter(|| indicator_table(l.subfield(), black_box(&tuple)).unwrap())
    });
    c.bench_function("direct isometry check, F_9 counterexample", |b| b.iter(|| is_isometry_direct(black_box(&f))));
    c.bench_function("witness search, F_9 counterexample", |b| b.iter(|| is_extendible_bruteforce(black_box(&f))));
}

fn bench_sweep(c: &mut Criterion) {
    let (_, l) = make_field_pair(2, 1, 2, None, None).unwrap();
    let mut params = SweepParams::new(2, 4);
    params.threads = Some(1);
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("F_4 over F_2, m = 2", |b| b.iter(|| sweep_theorem(&l, black_box(&params)).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_rref, bench_subspaces, bench_indicator, bench_sweep);
criterion_main!(benches);
