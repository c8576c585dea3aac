//! Benchmarks for the hot paths: canonical forms, monodromy group order,
//! curve decomposition, exhaustive enumeration, side pairings and rendering.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fillcurve::{
    build_scene, decompose, enumerate_uniform, group_order, min_length_clean, side_pairings,
};
use fillcurve_bench::fixture;

fn bench_canonical_form(c: &mut Criterion) {
    let d = fixture("clean_2_4_8_16edges.json");
    c.bench_function("canonical_form/16_edges", |b| {
        b.iter(|| black_box(&d).canonical_form())
    });
}

fn bench_group_order(c: &mut Criterion) {
    let d = fixture("clean_2_4_8_16edges.json");
    let generators = [d.sigma0().clone(), d.sigma1().clone()];
    c.bench_function("group_order/16_edges", |b| {
        b.iter(|| group_order(black_box(&generators)).unwrap())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let d = fixture("regular_2_6_6_12edges.json");
    c.bench_function("decompose/2_6_6", |b| {
        b.iter(|| decompose(black_box(&d)).unwrap())
    });
}

fn bench_min_length(c: &mut Criterion) {
    c.bench_function("min_length_clean/grid", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for m in 2..=10 {
                for k in 5..=30 {
                    acc += min_length_clean(black_box(m), black_box(k), 3)
                        .unwrap()
                        .total;
                }
            }
            acc
        })
    });
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("2_4_12_genus2", |b| {
        b.iter(|| enumerate_uniform(4, 12, 2, 1).unwrap())
    });
    group.bench_function("2_4_8_genus2", |b| {
        b.iter(|| enumerate_uniform(4, 8, 2, 1).unwrap())
    });
    group.finish();
}

fn bench_side_pairings(c: &mut Criterion) {
    let d = fixture("clean_2_4_8_16edges.json");
    c.bench_function("side_pairings/16_edges", |b| {
        b.iter(|| side_pairings(black_box(&d)).unwrap())
    });
}

fn bench_render(c: &mut Criterion) {
    let d = fixture("clean_2_4_8_16edges.json");
    c.bench_function("render/scene_and_svg", |b| {
        b.iter(|| build_scene(black_box(&d)).unwrap().to_svg())
    });
}

criterion_group!(
    benches,
    bench_canonical_form,
    bench_group_order,
    bench_decompose,
    bench_min_length,
    bench_enumerate,
    bench_side_pairings,
    bench_render
);
criterion_main!(benches);
