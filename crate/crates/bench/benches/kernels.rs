use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use delpezzo_bench::{a1_surface, dense_surface_f9};
use delpezzo_core::trace::profiles_by_element;
use delpezzo_core::{automorphisms, builtin_catalog, canonicalize, hunt, negative_curve_graph, surface_report, FieldSpec};

fn field(c: &mut Criterion) {
    let f = FieldSpec::new(7, 2, None).unwrap().field();
    c.bench_function("f49 mul table sweep", |b| {
        b.iter(|| {
            let mut acc = 1;
            for x in 1..49u8 {
                acc = f.mul(acc, black_box(x));
            }
            acc
        })
    });
}

fn points(c: &mut Criterion) {
    let s = dense_surface_f9();
    c.bench_function("surface_report f9", |b| b.iter(|| surface_report(black_box(&s))));
    let a1 = a1_surface();
    c.bench_function("canonicalize f2", |b| b.iter(|| canonicalize(black_box(&a1)).unwrap()));
}

fn symmetry(c: &mut Criterion) {
    let cat = builtin_catalog();
    let g = negative_curve_graph(cat.get("2.A1").unwrap()).unwrap();
    c.bench_function("automorphisms 2.A1", |b| b.iter(|| automorphisms(black_box(&g)).unwrap()));
    let class = cat.get("4.1").unwrap();
    c.bench_function("profiles_by_element 4.1", |b| b.iter(|| profiles_by_element(black_box(class)).unwrap()));
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("hunt");
    g.sample_size(10);
    let f2 = FieldSpec::new(2, 1, None).unwrap();
    g.bench_function("q2 prefilter", |b| b.iter(|| hunt(f2, true, false).unwrap()));
    g.finish();
}

criterion_group!(benches, field, points, symmetry, census);
criterion_main!(benches);
