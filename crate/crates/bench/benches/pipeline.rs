use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use holocount::algebra::{determinant, pfaffian};
use holocount::holant::{brute_force_contraction, count};
use holocount::signature::BasisChange;
use holocount_bench::{nae_instance, shipped, skew};

fn examples(c: &mut Criterion) {
    for name in ["example1.holo", "example2.holo"] {
        let f = shipped(name);
        c.bench_function(&format!("count/{name}"), |b| {
            b.iter(|| count(black_box(&f.instance), &f.basis))
        });
    }
}

fn scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_vs_edges");
    group.sample_size(10);
    for pairs in [3, 10, 20, 40] {
        let inst = nae_instance(pairs, 11);
        group.bench_with_input(
            BenchmarkId::from_parameter(inst.edge_count()),
            &inst,
            |b, inst| b.iter(|| count(inst, &BasisChange::b2())),
        );
    }
    group.finish();

    let mut group = c.benchmark_group("contraction_vs_edges");
    group.sample_size(10);
    for pairs in [1, 2, 3] {
        let inst = nae_instance(pairs, 11);
        group.bench_with_input(
            BenchmarkId::from_parameter(inst.edge_count()),
            &inst,
            |b, inst| b.iter(|| brute_force_contraction(inst)),
        );
    }
    group.finish();
}

fn algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("pfaffian");
    for n in [16, 32, 64] {
        let z = skew(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &z, |b, z| {
            b.iter(|| pfaffian(z))
        });
    }
    group.finish();
    let z = skew(32, 3).to_matrix();
    c.bench_function("determinant/32", |b| b.iter(|| determinant(black_box(&z))));
}

criterion_group!(benches, examples, scaling, algebra);
criterion_main!(benches);
