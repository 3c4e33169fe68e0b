use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use nilfree_bench::{seeded_ideal, seeded_tower, F2, F5};
use nilfree_core::checks::convolution_suite;
use nilfree_core::rng::SplitMix64;
use nilfree_core::{enumerate_words, freeness_certificate, oracle_rank_check, xy_expand, Poly};

fn bench_convolution(c: &mut Criterion) {
    c.bench_function("convolution_sweep_d4_f2", |b| {
        b.iter(|| convolution_suite(F2, black_box(4)).unwrap())
    });
}

fn bench_block_slice(c: &mut Criterion) {
    let tower = seeded_tower(F2, 7);
    c.bench_function("block_sum_slice_h8", |b| {
        b.iter(|| tower.block_sum_slice(black_box(2)).unwrap())
    });
}

fn bench_tower_apply(c: &mut Criterion) {
    let tower = seeded_tower(F5, 11);
    let words = enumerate_words(8).unwrap();
    let mut rng = SplitMix64::new(3);
    let samples: Vec<Poly> = (0..256)
        .map(|_| Poly::monomial(F5, words[rng.usize_below(words.len())]))
        .collect();
    c.bench_function("tower_apply_level3_256_words", |b| {
        b.iter(|| {
            for v in &samples {
                black_box(tower.apply(3, v).unwrap());
            }
        })
    });
}

fn bench_freeness(c: &mut Criterion) {
    let ideal = seeded_ideal(F5, 4, 23);
    c.bench_function("freeness_certificate_d4", |b| {
        b.iter(|| freeness_certificate(&ideal, black_box(4), None).unwrap())
    });
    c.bench_function("oracle_rank_check_d4", |b| {
        b.iter(|| oracle_rank_check(&ideal, black_box(4)).unwrap())
    });
}

fn bench_expand(c: &mut Criterion) {
    let z = "xyxyxy".parse().unwrap();
    c.bench_function("xy_expand_d6", |b| {
        b.iter(|| xy_expand(F5, black_box(&z)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_convolution,
    bench_block_slice,
    bench_tower_apply,
    bench_freeness,
    bench_expand
);
criterion_main!(benches);
