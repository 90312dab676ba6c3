use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use platkit::foliation::{random_tiling, reduce_to_standard, SurfaceKind};
use platkit::plat::PlatPresentation;
use platkit::search::SearchBudget;
use platkit::simplify::{obscure_with, simplify_composite, simplify_split, ObscureMode};

fn search(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let split = PlatPresentation::parse(3, "s1 s1 s3' s5 s4").unwrap();
    let (hidden, _) = obscure_with(&split, 4, 11, ObscureMode::DoubleCoset).unwrap();
    c.bench_function("simplify_split n=3 k=4", |b| b.iter(|| simplify_split(black_box(&hidden), &budget).unwrap()));

    let composite = PlatPresentation::parse(3, "s1 s2' s4 s5 s4").unwrap();
    let (hidden, _) = obscure_with(&composite, 3, 2, ObscureMode::WithFlips).unwrap();
    c.bench_function("simplify_composite n=3 k=3", |b| {
        b.iter(|| simplify_composite(black_box(&hidden), &budget).unwrap())
    });
}

fn tilings(c: &mut Criterion) {
    let sphere = random_tiling(SurfaceKind::Sphere, 30, 1);
    c.bench_function("reduce sphere |T3|=30", |b| b.iter(|| reduce_to_standard(black_box(&sphere)).unwrap()));
    let punctured = random_tiling(SurfaceKind::TwicePunctured, 30, 1);
    c.bench_function("reduce punctured |T3|=32", |b| b.iter(|| reduce_to_standard(black_box(&punctured)).unwrap()));
}

criterion_group!(benches, search, tilings);
criterion_main!(benches);
