use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quadrance_core::field::build_field_of_order;
use quadrance_core::geometry::build_polygon;
use quadrance_core::graph::{build_graph, max_clique, srg_params};
use quadrance_core::scheme::{build_quadrance_scheme, verify_scheme};
use quadrance_core::Elem;

fn field(c: &mut Criterion) {
    c.bench_function("build F_3^5", |b| {
        b.iter(|| build_field_of_order(black_box(243)).unwrap())
    });
    let ctx = build_field_of_order(199).unwrap();
    c.bench_function("char pairs q=199", |b| b.iter(|| ctx.char_pair_counts()));
}

fn polygons(c: &mut Criterion) {
    let ctx = build_field_of_order(13).unwrap();
    let sides: Vec<Elem> = [1, 2, 5, 7, 11, 3, 4].map(Elem).to_vec();
    c.bench_function("heptagon q=13", |b| {
        b.iter(|| build_polygon(&ctx, black_box(&sides)).unwrap())
    });
}

fn scheme(c: &mut Criterion) {
    let ctx = build_field_of_order(7).unwrap();
    let cm = build_quadrance_scheme(&ctx);
    c.bench_function("verify scheme q=7", |b| {
        b.iter(|| verify_scheme(&ctx, &cm).unwrap())
    });
}

fn graph(c: &mut Criterion) {
    let ctx = build_field_of_order(11).unwrap();
    let g = build_graph(&ctx).unwrap();
    c.bench_function("srg q=11", |b| b.iter(|| srg_params(&g).unwrap()));
    let ctx7 = build_field_of_order(7).unwrap();
    let g7 = build_graph(&ctx7).unwrap();
    c.bench_function("enumerate cliques q=7", |b| {
        b.iter(|| max_clique(&ctx7, &g7, true, 11).unwrap())
    });
}

criterion_group!(benches, field, polygons, scheme, graph);
criterion_main!(benches);
