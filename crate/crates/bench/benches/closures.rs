use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use postlat::boolfn::{canonicalize, in_w, Depth};
use postlat::classes::{clone_closure, idempotent_closure, z_operator};
use postlat::constraints::gadget_claim;
use postlat::{FunctionClass, TruthTable};
use postlat_bench::generator_sets;

fn closures(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    for (name, gens) in generator_sets() {
        group.bench_with_input(BenchmarkId::new("clone", name), &gens, |b, g| {
            b.iter(|| clone_closure(black_box(g), 4).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("idempotent", name), &gens, |b, g| {
            b.iter(|| idempotent_closure(black_box(g), 3).unwrap())
        });
    }
    group.finish();
}

fn zero_operator(c: &mut Criterion) {
    let b2 = FunctionClass::from_predicate(4, |f| postlat::boolfn::in_b(f, Depth::Finite(2))).unwrap();
    c.bench_function("z2 of B^2 at 4", |b| b.iter(|| z_operator(black_box(&b2), Depth::Finite(2)).unwrap()));
}

fn predicates(c: &mut Criterion) {
    let tables: Vec<TruthTable> = (0..1u64 << 16).step_by(97).map(|t| TruthTable::from_u64(4, t).unwrap()).collect();
    c.bench_function("canonicalize arity 4", |b| {
        b.iter(|| tables.iter().map(canonicalize).filter(|t| t.arity() == 4).count())
    });
    c.bench_function("W^3 test arity 4", |b| b.iter(|| tables.iter().filter(|t| in_w(t, Depth::Finite(3))).count()));
}

fn gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("gadget");
    group.sample_size(10);
    for (m, n) in [(3, 3), (3, 5), (5, 3)] {
        group.bench_function(format!("m{m} n{n}"), |b| b.iter(|| gadget_claim(m, n, u64::MAX).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, closures, zero_operator, predicates, gadgets);
criterion_main!(benches);
