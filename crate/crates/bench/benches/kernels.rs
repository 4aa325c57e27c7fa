use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dbubble_core::closed_forms::{emin, planar_energy};
use dbubble_core::geometry::io::parse_grid;
use dbubble_core::geometry::{double_bubble_energy, Axis};
use dbubble_core::lemmas::{verify_all, GridSpec};
use dbubble_core::search::{brute_force, SearchSpec};
use dbubble_core::slicing::corpus::{generate, CorpusSpec};
use dbubble_core::slicing::lower_bound;

fn energies(c: &mut Criterion) {
    let cube = parse_grid("# dim=3\nAAB\nAAB\nABB\n\nAAB\nABB\nBBB\n").unwrap();
    c.bench_function("energy_3x3x2", |b| b.iter(|| double_bubble_energy(black_box(&cube))));
    let corpus = generate(&CorpusSpec { count: 50, ..CorpusSpec::default() });
    c.bench_function("energy_corpus_50", |b| {
        b.iter(|| corpus.iter().map(|i| double_bubble_energy(&i.config).energy).sum::<u64>())
    });
    c.bench_function("lower_bound_corpus_50", |b| {
        b.iter(|| corpus.iter().filter_map(|i| lower_bound(&i.config, Axis::Z).ok()).count())
    });
}

fn closed_forms(c: &mut Criterion) {
    c.bench_function("planar_energy", |b| b.iter(|| planar_energy(black_box(2.0), black_box(4.0))));
    c.bench_function("emin", |b| b.iter(|| emin(black_box(3.0), black_box(5.0))));
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    group.bench_function("planar_4_6", |b| b.iter(|| brute_force(&SearchSpec::new(2, 4, 6)).unwrap()));
    group.bench_function("spatial_2_3", |b| b.iter(|| brute_force(&SearchSpec::new(3, 2, 3)).unwrap()));
    group.finish();
}

fn lemmas(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemmas");
    group.sample_size(10);
    group.bench_function("fast_grid", |b| b.iter(|| verify_all(&GridSpec::fast()).passed()));
    group.finish();
}

criterion_group!(benches, energies, closed_forms, searches, lemmas);
criterion_main!(benches);
