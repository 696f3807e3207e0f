use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use strataflow::flows::{build_stratified_poset, enumerate_component, ComponentSignature};
use strataflow::{core, homology, order_complex, weak_reduce};
use strataflow_bench::{component_poset, random_posets};

fn enumeration(c: &mut Criterion) {
    let sig = ComponentSignature::annulus();
    let mut g = c.benchmark_group("flows");
    g.sample_size(10);
    g.bench_function("enumerate codim 3", |b| {
        b.iter(|| enumerate_component(black_box(&sig), 3).unwrap())
    });
    let e = enumerate_component(&sig, 3).unwrap();
    g.bench_function("stratify", |b| b.iter(|| build_stratified_poset(black_box(&e)).unwrap()));
    g.finish();
}

fn reductions(c: &mut Criterion) {
    let p = component_poset();
    c.bench_function("core of component", |b| b.iter(|| core(black_box(&p))));
    c.bench_function("weak reduction of component", |b| b.iter(|| weak_reduce(black_box(&p))));
    let small = random_posets(32, 8, 0.4);
    c.bench_function("core of 32 random 8-point posets", |b| {
        b.iter(|| small.iter().map(|p| core(p).0.len()).sum::<usize>())
    });
}

fn homologies(c: &mut Criterion) {
    let p = component_poset();
    c.bench_function("homology of component", |b| {
        b.iter(|| homology(&order_complex(black_box(&p))).unwrap())
    });
}

criterion_group!(benches, enumeration, reductions, homologies);
criterion_main!(benches);
