//! Executable structural checks: the convolution identity sweep, the
//! component-independence rank checks, the randomized factor-lemma harness,
//! and the projection contract. Each suite returns a report with a case
//! count and the failures it found (an empty failure list means the suite
//! passed).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{projection_with_kernel, rref, tensor_check_factor, LinMap, LinalgError};
use crate::poly::{component, convolution_sides, q_basis, s_basis, Poly};
use crate::rng::SplitMix64;
use crate::scalar::{FieldSpec, Scalar};
use crate::tower::TowerError;
use crate::word::{enumerate_binwords, enumerate_words, feasible_multidegrees, BinWord, Word};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

impl SuiteReport {
    fn new(name: &str, cases: usize, failures: Vec<String>) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            cases,
            ok: failures.is_empty(),
            failures,
        }
    }
}

/// Exhaustive convolution identity: for every collapsed word of degree up
/// to `max_degree`, every split into two nonempty factors, and every
/// feasible multidegree, the product component equals the convolution sum.
pub fn convolution_suite(field: FieldSpec, max_degree: usize) -> Result<SuiteReport, TowerError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for d in 2..=max_degree {
        for z in enumerate_binwords(d)? {
            for split in 1..d {
                let u = z.block(0, split);
                let v = z.block(split, d - split);
                for n in feasible_multidegrees(&z) {
                    cases += 1;
                    let (left, right) = convolution_sides(field, &u, &v, &n)?;
                    if left != right {
                        failures.push(format!("z={z} split={split} n={n}"));
                    }
                }
            }
        }
    }
    Ok(SuiteReport::new("convolution", cases, failures))
}

/// Rank checks for component independence: per collapsed word, the nonzero
/// components are independent; unions over a whole degree stay independent;
/// and one-step right multiplication by the generators preserves
/// independence (up to `right_mult_degree`).
pub fn independence_suite(
    field: FieldSpec,
    max_degree: usize,
    right_mult_degree: usize,
) -> Result<SuiteReport, TowerError> {
    let mut cases = 0;
    let mut failures = Vec::new();

    for d in 1..=max_degree {
        let mut union: Vec<Poly> = Vec::new();
        for z in enumerate_binwords(d)? {
            let mut comps = Vec::new();
            for n in feasible_multidegrees(&z) {
                let c = component(field, &z, &n)?;
                if !c.is_zero() {
                    comps.push(c);
                }
            }
            cases += 1;
            let rank = rref(field, d, &comps)?.rank();
            if rank != comps.len() {
                failures.push(format!("components of {z}: rank {rank} of {}", comps.len()));
            }
            union.extend(comps);
        }
        cases += 1;
        let union_rank = rref(field, d, &union)?.rank();
        if union_rank != union.len() {
            failures.push(format!(
                "degree-{d} union: rank {union_rank} of {}",
                union.len()
            ));
        }

        if d <= right_mult_degree {
            let mut translated = Vec::new();
            for v in &union {
                for g in crate::word::Gen::ALL {
                    translated.push(v.mul_word(&Word::gen(g))?);
                }
            }
            cases += 1;
            let rank = rref(field, d + 1, &translated)?.rank();
            if rank != translated.len() {
                failures.push(format!(
                    "degree-{d} right translates: rank {rank} of {}",
                    translated.len()
                ));
            }
        }
    }
    Ok(SuiteReport::new("independence", cases, failures))
}

/// Draws a random linear self-map of the degree-`d` component. The sampler
/// mixes killing maps (many words sent to zero) with dense ones so the
/// factor-lemma hypothesis is exercised on both sides.
pub fn random_linmap(
    field: FieldSpec,
    degree: usize,
    rng: &mut SplitMix64,
) -> Result<LinMap, LinalgError> {
    let words = enumerate_words(degree)?;
    let style = rng.below(4);
    let mut images = BTreeMap::new();
    for w in &words {
        let image = match style {
            // Zero map.
            0 => Poly::zero(field),
            // Projection-like: kill some words, fix the rest.
            1 => {
                if rng.below(2) == 0 {
                    Poly::zero(field)
                } else {
                    Poly::monomial(field, *w)
                }
            }
            // Sparse random image.
            _ => {
                let n_terms = rng.range(0, 2) as usize;
                let mut terms = Vec::new();
                for _ in 0..n_terms {
                    let target = words[rng.usize_below(words.len())];
                    terms.push((target, random_scalar(field, rng)));
                }
                Poly::from_terms(field, terms).expect("in-field scalars")
            }
        };
        images.insert(*w, image);
    }
    LinMap::from_images(field, degree, images)
}

pub fn random_scalar(field: FieldSpec, rng: &mut SplitMix64) -> Scalar {
    match field {
        FieldSpec::Q => {
            let num = rng.range(0, 8) as i64 - 4;
            field.from_i64(num)
        }
        FieldSpec::Fp { p } => {
            let v = rng.below(p);
            field.from_i64(v as i64)
        }
    }
}

pub fn random_nonzero_scalar(field: FieldSpec, rng: &mut SplitMix64) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Randomized factor-lemma harness: samples pairs of maps at the given
/// factor degrees and checks the implication (hypothesis on the product map
/// forces one factor-side conclusion) on every sample.
pub fn factor_suite(
    field: FieldSpec,
    samples: usize,
    factor_degrees: &[(usize, usize)],
    seed: u64,
) -> Result<SuiteReport, TowerError> {
    let mut rng = SplitMix64::new(seed);
    let mut cases = 0;
    let mut failures = Vec::new();
    for round in 0..samples {
        let (p, q) = factor_degrees[round % factor_degrees.len()];
        let f = random_linmap(field, p, &mut rng)?;
        let g = random_linmap(field, q, &mut rng)?;
        for z in enumerate_binwords(p + q)? {
            cases += 1;
            let report = tensor_check_factor(&f, &g, &z)?;
            if !report.implication_holds() {
                failures.push(format!("round {round}, z={z}: {report}"));
            }
        }
    }
    Ok(SuiteReport::new("factor-lemma", cases, failures))
}

/// Randomized projection contract: idempotence, kernel exactness, and the
/// rank split `image + kernel = 6^d`.
pub fn projection_suite(
    field: FieldSpec,
    samples: usize,
    max_degree: usize,
    seed: u64,
) -> Result<SuiteReport, TowerError> {
    let mut rng = SplitMix64::new(seed);
    let mut cases = 0;
    let mut failures = Vec::new();
    for round in 0..samples {
        let degree = 1 + rng.usize_below(max_degree);
        let words = enumerate_words(degree)?;
        let n_gens = rng.usize_below(4);
        let mut gens = Vec::new();
        for _ in 0..n_gens {
            let n_terms = 1 + rng.usize_below(3);
            let mut terms = Vec::new();
            for _ in 0..n_terms {
                let w = words[rng.usize_below(words.len())];
                terms.push((w, random_scalar(field, &mut rng)));
            }
            gens.push(Poly::from_terms(field, terms).expect("in-field scalars"));
        }

        cases += 1;
        let c = projection_with_kernel(field, degree, &gens)?;
        let kernel = rref(field, degree, &gens)?;

        let mut bad = None;
        for g in &gens {
            if !c.apply(g)?.is_zero() {
                bad = Some("kernel generator not killed".to_string());
            }
        }
        for w in words.iter().take(40) {
            let img = c.apply(&Poly::monomial(field, *w))?;
            if c.apply(&img)? != img {
                bad = Some(format!("not idempotent at {w}"));
            }
        }
        // Anything killed must lie in the prescribed span.
        for w in &words {
            let img = c.apply(&Poly::monomial(field, *w))?;
            let diff = Poly::monomial(field, *w).sub(&img)?;
            if !kernel.contains(&diff)?.contained {
                bad = Some(format!("defect of {w} escapes the kernel span"));
            }
        }
        let images: Vec<Poly> = c.images().values().cloned().collect();
        let image_rank = rref(field, degree, &images)?.rank();
        if image_rank + kernel.rank() != words.len() {
            bad = Some(format!(
                "rank split {image_rank} + {} != {}",
                kernel.rank(),
                words.len()
            ));
        }
        if let Some(msg) = bad {
            failures.push(format!("round {round} (degree {degree}): {msg}"));
        }
    }
    Ok(SuiteReport::new("projection", cases, failures))
}

/// Partition checks: collapses classify the monomial basis, and the nonzero
/// components of each class partition its words.
pub fn partition_suite(field: FieldSpec, max_degree: usize) -> Result<SuiteReport, TowerError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for d in 0..=max_degree {
        let mut seen = std::collections::BTreeSet::new();
        let mut total = 0usize;
        for z in enumerate_binwords(d)? {
            let basis = q_basis(&z)?;
            total += basis.len();
            for w in &basis {
                if !seen.insert(*w) {
                    failures.push(format!("word {w} in two collapse classes"));
                }
            }

            // Nonzero components partition the class support.
            let mut comp_words = std::collections::BTreeSet::new();
            for n in feasible_multidegrees(&z) {
                let c = component(field, &z, &n)?;
                for (w, _) in c.terms() {
                    if !comp_words.insert(*w) {
                        failures.push(format!("word {w} in two components of {z}"));
                    }
                }
            }
            cases += 1;
            if comp_words.len() != basis.len() {
                failures.push(format!("components of {z} miss part of the class"));
            }
        }
        cases += 1;
        if total != 6usize.pow(d as u32) {
            failures.push(format!("degree {d}: classes cover {total} words"));
        }
        if seen.len() != total {
            failures.push(format!("degree {d}: classes overlap"));
        }
    }
    Ok(SuiteReport::new("partition", cases, failures))
}

/// The strict-order laws of the length-graded lexicographic comparison,
/// exhaustive per degree.
pub fn order_suite(max_degree: usize) -> Result<SuiteReport, TowerError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for d in 0..=max_degree {
        let words = enumerate_binwords(d)?;
        for a in &words {
            if a.lex_lt(a) {
                failures.push(format!("{a} precedes itself"));
            }
            for b in &words {
                cases += 1;
                let ab = a.lex_cmp(b);
                if ab.is_none() {
                    failures.push(format!("equal lengths must compare: {a} vs {b}"));
                    continue;
                }
                for c in &words {
                    if a.lex_lt(b) && b.lex_lt(c) && !a.lex_lt(c) {
                        failures.push(format!("transitivity fails at {a},{b},{c}"));
                    }
                }
            }
        }
    }
    Ok(SuiteReport::new("order", cases, failures))
}

/// Collapse-map homomorphism and length preservation, exhaustive over all
/// factor pairs with total degree at most `max_degree`.
pub fn beta_suite(max_degree: usize) -> Result<SuiteReport, TowerError> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for du in 0..=max_degree {
        for dv in 0..=(max_degree - du) {
            for u in enumerate_words(du)? {
                for v in enumerate_words(dv)? {
                    cases += 1;
                    let uv = u.concat(&v)?;
                    let lhs = crate::word::beta(&uv);
                    let rhs = crate::word::beta(&u).concat(&crate::word::beta(&v))?;
                    if lhs != rhs {
                        failures.push(format!("beta({u}{v})"));
                    }
                    if lhs.len() != uv.len() {
                        failures.push(format!("length not preserved at {u}{v}"));
                    }
                }
            }
        }
    }
    Ok(SuiteReport::new("collapse-homomorphism", cases, failures))
}

/// Lemma-2.1-style rank statement restricted to one degree slice, plus the
/// right-module translation step; used by tests that need the pieces
/// separately rather than the whole suite.
pub fn components_of(field: FieldSpec, z: &BinWord) -> Result<Vec<Poly>, TowerError> {
    let mut out = Vec::new();
    for n in feasible_multidegrees(z) {
        let c = component(field, z, &n)?;
        if !c.is_zero() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Convenience wrapper: the span of the strictly-smaller monomials of `z`
/// joined with an extra set of rows.
pub fn smaller_span_with(
    field: FieldSpec,
    z: &BinWord,
    extra: &[Poly],
) -> Result<crate::linalg::GradedSubspace, TowerError> {
    let mut rows: Vec<Poly> = s_basis(z)?
        .into_iter()
        .map(|w| Poly::monomial(field, w))
        .collect();
    rows.extend_from_slice(extra);
    Ok(rref(field, z.len(), &rows)?)
}
