use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use tropcor_bench::{bench_cover, bench_matrix};
use tropcor_core::multicurve::enumerate_standard_multicurves;
use tropcor_core::pullback::PullbackTree;
use tropcor_core::scan::{scan_obstructions, ScanOptions};
use tropcor_core::spectral;
use tropcor_core::trees::{enumerate_stable_trees, MarkingSet};

fn tree_enumeration(c: &mut Criterion) {
    let marking = MarkingSet::new((0..7).map(|i| char::from(b'a' + i).to_string())).unwrap();
    c.bench_function("enumerate_stable_trees_n7", |b| {
        b.iter(|| {
            enumerate_stable_trees(black_box(&marking), None, None)
                .unwrap()
                .count()
        })
    });
}

fn pullback_pipeline(c: &mut Criterion) {
    let (cover, portrait) = bench_cover();
    let multicurves = enumerate_standard_multicurves(cover.marking(), 3);
    c.bench_function("pullback_and_tlt_all_multicurves_n6_d4", |b| {
        b.iter(|| {
            for mc in &multicurves {
                let tree = PullbackTree::build(black_box(&cover), mc).unwrap();
                black_box(tree.tlt_matrix(&portrait));
            }
        })
    });
    c.bench_function("scan_n6_d4", |b| {
        b.iter(|| scan_obstructions(black_box(&cover), &portrait, &ScanOptions::default()).unwrap())
    });
}

fn spectral_certification(c: &mut Criterion) {
    let m = bench_matrix(8);
    c.bench_function("charpoly_8x8", |b| {
        b.iter(|| spectral::charpoly(black_box(&m)))
    });
    c.bench_function("dominant_eigenvalue_8x8", |b| {
        b.iter(|| spectral::dominant_eigenvalue(black_box(&m)).unwrap())
    });
}

criterion_group!(benches, tree_enumeration, pullback_pipeline, spectral_certification);
criterion_main!(benches);
