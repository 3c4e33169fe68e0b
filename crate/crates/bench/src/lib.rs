//! Shared fixtures for the benchmark targets.

use nilfree_core::checks::random_nonzero_scalar;
use nilfree_core::rng::SplitMix64;
use nilfree_core::{
    build_tower, enumerate_words, FieldSpec, IdealTruncation, Poly, RTower, Schedule, ScheduleMode,
};

pub const F2: FieldSpec = FieldSpec::Fp { p: 2 };
pub const F5: FieldSpec = FieldSpec::Fp { p: 5 };

/// Random homogeneous element with up to three terms.
pub fn random_homogeneous(field: FieldSpec, degree: usize, rng: &mut SplitMix64) -> Poly {
    let words = enumerate_words(degree).expect("degree under cap");
    let terms = (0..1 + rng.usize_below(3)).map(|_| {
        (
            words[rng.usize_below(words.len())],
            random_nonzero_scalar(field, rng),
        )
    });
    Poly::from_terms(field, terms).expect("in-field")
}

/// A three-level tower on the (2, 4, 8) schedule with seeded random sets.
pub fn seeded_tower(field: FieldSpec, seed: u64) -> RTower {
    let mut rng = SplitMix64::new(seed);
    let f1: Vec<Poly> = (0..3)
        .map(|_| random_homogeneous(field, 2, &mut rng))
        .collect();
    let f2: Vec<Poly> = (0..3)
        .map(|_| random_homogeneous(field, 4, &mut rng))
        .collect();
    build_tower(
        field,
        &Schedule::from_u64(&[2, 4, 8], ScheduleMode::Toy),
        &[f1, f2, vec![]],
    )
    .expect("toy tower builds")
}

/// A small truncated ideal with seeded homogeneous generators.
pub fn seeded_ideal(field: FieldSpec, d_max: usize, seed: u64) -> IdealTruncation {
    let mut rng = SplitMix64::new(seed);
    let gens = vec![
        random_homogeneous(field, 2, &mut rng),
        random_homogeneous(field, 3, &mut rng),
    ];
    IdealTruncation::new(field, gens, d_max).expect("ideal builds")
}
