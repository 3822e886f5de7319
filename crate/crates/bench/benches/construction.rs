use asdim_core::amalgam::{Amalgamation, AmalgamationSpec, ResolveContext};
use asdim_core::cover::{exact_min_bound, greedy_witness};
use asdim_core::{run_certificate, FiniteGraph, MetricView, ProofParameters};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn spec(text: &str) -> AmalgamationSpec {
    AmalgamationSpec::from_json(text, ResolveContext::default()).unwrap()
}

fn construction(c: &mut Criterion) {
    let chain = spec(include_str!("../../../specs/chain_k2.json"));
    let triangle = spec(include_str!("../../../specs/triangle_edge.json"));
    let mut group = c.benchmark_group("build");
    for depth in [10, 40] {
        let s = chain.with_depth(depth);
        group.bench_with_input(BenchmarkId::new("chain", depth), &s, |b, s| {
            b.iter(|| Amalgamation::build(black_box(s)).unwrap())
        });
    }
    for depth in [4, 8] {
        let s = triangle.with_depth(depth);
        group.bench_with_input(BenchmarkId::new("triangle", depth), &s, |b, s| {
            b.iter(|| Amalgamation::build(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn covers(c: &mut Criterion) {
    let p = FiniteGraph::path(10);
    c.bench_function("oracle/p10_r3_n1", |b| {
        b.iter(|| exact_min_bound(&MetricView::whole(&p), black_box(3), 1).unwrap())
    });
    let triangle = spec(include_str!("../../../specs/triangle_edge.json"));
    let a = Amalgamation::build(&triangle).unwrap();
    c.bench_function("greedy/triangle_d8_r4_n1", |b| {
        b.iter(|| greedy_witness(&MetricView::whole(&a.amalgam.graph), black_box(4), 1).unwrap())
    });
}

fn certificate(c: &mut Criterion) {
    let chain = spec(include_str!("../../../specs/chain_k2.json"));
    let params = ProofParameters {
        big_r: 2,
        r: 10,
        depth: 40,
    };
    let mut group = c.benchmark_group("certificate");
    group.sample_size(10);
    group.bench_function("chain_R2_r10_d40", |b| b.iter(|| run_certificate(black_box(&chain), params).unwrap()));
    group.finish();
}

criterion_group!(benches, construction, covers, certificate);
criterion_main!(benches);
