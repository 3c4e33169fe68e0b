//! Degree-truncated homogeneous two-sided ideals, block right ideals, and
//! membership tests.
//!
//! An [`IdealTruncation`] realizes the first `d_max` graded slices of the
//! two-sided ideal generated by homogeneous elements; slices are built
//! degree by degree through `I_d = H_1 I_{d-1} + I_{d-1} H_1 + (degree-d
//! generators)`, which spans the same space as enumerating all `a g b`
//! products. A [`BlockIdeal`] is the right ideal generated by all
//! block-offset translates of a homogeneous set `F`: its degree-`d` slice is
//! the span of `u f v` with `deg u` a multiple of the block size.

use thiserror::Error;

use crate::linalg::{rref, GradedSubspace, LinalgError, RrefBuilder};
use crate::poly::{Poly, PolyError};
use crate::scalar::{FieldSpec, ScalarError};
use crate::word::{enumerate_words, Word, WordError};

/// Cap on the estimated term count of a power expansion.
pub const POWER_TERM_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("degree {0} exceeds the truncation bound {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("generator {0} is not homogeneous")]
    NonHomogeneousGenerator(String),
    #[error("generator {0} has degree zero; graded generators must have degree >= 1")]
    ConstantGenerator(String),
    #[error("set elements must share one degree, found degrees {0} and {1}")]
    MixedDegreeSet(usize, usize),
    #[error("estimated {0} terms exceeds the {POWER_TERM_CAP}-term power cap")]
    PowerBlowup(u128),
    #[error("exponent must be >= 1")]
    ZeroExponent,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Splits a polynomial into its homogeneous parts, ascending by degree.
pub fn homogeneous_components(f: &Poly) -> Vec<Poly> {
    let mut by_degree: std::collections::BTreeMap<usize, Vec<(Word, crate::scalar::Scalar)>> =
        std::collections::BTreeMap::new();
    for (w, c) in f.terms() {
        by_degree.entry(w.len()).or_default().push((*w, c.clone()));
    }
    by_degree
        .into_values()
        .map(|terms| Poly::from_sorted_terms(f.field(), terms))
        .collect()
}

/// Exact noncommutative power `f^e`, guarded against blowup.
pub fn power(f: &Poly, e: u32) -> Result<Poly, IdealError> {
    if e == 0 {
        return Err(IdealError::ZeroExponent);
    }
    // Worst case the term count multiplies with every factor.
    let mut estimate: u128 = 1;
    for _ in 0..e {
        estimate = estimate.saturating_mul(f.num_terms() as u128);
        if estimate > POWER_TERM_CAP as u128 {
            return Err(IdealError::PowerBlowup(estimate));
        }
    }
    let mut acc = f.clone();
    for _ in 1..e {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// The first `d_max` graded slices of a two-sided homogeneous ideal.
#[derive(Debug, Clone)]
pub struct IdealTruncation {
    field: FieldSpec,
    generators: Vec<Poly>,
    d_max: usize,
    slices: Vec<GradedSubspace>,
}

impl IdealTruncation {
    /// Builds all slices up to `d_max`. Generators must be homogeneous of
    /// degree at least one; zero generators are dropped.
    pub fn new(
        field: FieldSpec,
        generators: Vec<Poly>,
        d_max: usize,
    ) -> Result<IdealTruncation, IdealError> {
        let mut kept = Vec::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            if g.field() != field {
                return Err(ScalarError::MixedFields(field, g.field()).into());
            }
            match g.homogeneous_degree() {
                None => return Err(IdealError::NonHomogeneousGenerator(g.to_string())),
                Some(0) => return Err(IdealError::ConstantGenerator(g.to_string())),
                Some(_) => kept.push(g),
            }
        }

        let mut slices = Vec::with_capacity(d_max + 1);
        slices.push(GradedSubspace::zero(field, 0));
        for d in 1..=d_max {
            let mut builder = RrefBuilder::new(field, d);
            if d >= 1 {
                let prev = &slices[d - 1];
                for row in prev.basis() {
                    for g in crate::word::Gen::ALL {
                        let letter = Word::gen(g);
                        builder.push(&row.word_mul(&letter)?)?;
                        builder.push(&row.mul_word(&letter)?)?;
                    }
                }
            }
            for g in &kept {
                if g.homogeneous_degree() == Some(d) {
                    builder.push(g)?;
                }
            }
            slices.push(builder.finish());
        }

        Ok(IdealTruncation {
            field,
            generators: kept,
            d_max,
            slices,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// The reduced basis of the degree-`d` slice.
    pub fn slice(&self, d: usize) -> Result<&GradedSubspace, IdealError> {
        self.slices
            .get(d)
            .ok_or(IdealError::DegreeOutOfRange(d, self.d_max))
    }

    /// Exact membership of a homogeneous element in the truncation.
    pub fn membership(&self, v: &Poly) -> Result<bool, IdealError> {
        if v.is_zero() {
            return Ok(true);
        }
        let d = v
            .homogeneous_degree()
            .ok_or_else(|| IdealError::NonHomogeneousGenerator(v.to_string()))?;
        Ok(self.slice(d)?.contains(v)?.contained)
    }
}

/// The right ideal generated by all block-aligned translates of `F`:
/// the degree-`d` slice spans `u f v` over `f` in `F`, `u` of degree `nk`,
/// and `v` filling the rest.
#[derive(Debug, Clone)]
pub struct BlockIdeal {
    field: FieldSpec,
    block: usize,
    f_degree: usize,
    f_set: Vec<Poly>,
}

impl BlockIdeal {
    /// `block` is the offset stride; `F` must be homogeneous of a single
    /// degree. An empty `F` is the zero ideal (`f_degree` 0).
    pub fn new(field: FieldSpec, block: usize, f_set: Vec<Poly>) -> Result<BlockIdeal, IdealError> {
        assert!(block >= 1, "block size must be positive");
        let mut f_degree = None;
        for f in &f_set {
            if f.field() != field {
                return Err(ScalarError::MixedFields(field, f.field()).into());
            }
            let d = f
                .homogeneous_degree()
                .ok_or_else(|| IdealError::NonHomogeneousGenerator(f.to_string()))?;
            match f_degree {
                None => f_degree = Some(d),
                Some(existing) if existing != d => {
                    return Err(IdealError::MixedDegreeSet(existing, d))
                }
                Some(_) => {}
            }
        }
        Ok(BlockIdeal {
            field,
            block,
            f_degree: f_degree.unwrap_or(0),
            f_set,
        })
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn f_degree(&self) -> usize {
        self.f_degree
    }

    pub fn f_set(&self) -> &[Poly] {
        &self.f_set
    }

    /// Spanning products `u f v` of total degree `d`, in generation order
    /// (offset multiple ascending, then left word, then `F` index, then
    /// right word).
    pub fn spanning_products(&self, d: usize) -> Result<Vec<Poly>, IdealError> {
        let mut out = Vec::new();
        if self.f_set.is_empty() {
            return Ok(out);
        }
        let m = self.f_degree;
        let mut k = 0usize;
        while self.block * k + m <= d {
            let left_deg = self.block * k;
            let right_deg = d - left_deg - m;
            for u in enumerate_words(left_deg)? {
                for f in &self.f_set {
                    let uf = f.word_mul(&u)?;
                    for v in enumerate_words(right_deg)? {
                        out.push(uf.mul_word(&v)?);
                    }
                }
            }
            k += 1;
        }
        Ok(out)
    }

    /// Reduced basis of the degree-`d` slice. Recomputed per call; the
    /// result is canonical, so repeated calls agree.
    pub fn slice(&self, d: usize) -> Result<GradedSubspace, IdealError> {
        let products = self.spanning_products(d)?;
        Ok(rref(self.field, d, &products)?)
    }

    pub fn membership(&self, v: &Poly) -> Result<bool, IdealError> {
        if v.is_zero() {
            return Ok(true);
        }
        let d = v
            .homogeneous_degree()
            .ok_or_else(|| IdealError::NonHomogeneousGenerator(v.to_string()))?;
        Ok(self.slice(d)?.contains(v)?.contained)
    }
}

/// Wire form of a truncated ideal: `{"generators": [poly...], "d_max": n}`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct IdealJson {
    pub generators: Vec<Vec<crate::poly::TermJson>>,
    pub d_max: usize,
}

pub fn ideal_to_json(t: &IdealTruncation) -> IdealJson {
    IdealJson {
        generators: t
            .generators()
            .iter()
            .map(crate::poly::poly_to_json)
            .collect(),
        d_max: t.d_max(),
    }
}

/// Rebuilds the truncation from its wire form; slices are regenerated, so a
/// round-trip reproduces identical reduced bases.
pub fn ideal_from_json(field: FieldSpec, json: &IdealJson) -> Result<IdealTruncation, IdealError> {
    let gens: Result<Vec<Poly>, PolyError> = json
        .generators
        .iter()
        .map(|terms| crate::poly::poly_from_json(field, terms))
        .collect();
    IdealTruncation::new(field, gens?, json.d_max)
}

/// Outcome of the heuristic cover search: a candidate `F` whose block ideal
/// contains all probed slices, or the uncoverable vectors found.
#[derive(Debug, Clone)]
pub enum CoverSearch {
    Found {
        f_set: Vec<Poly>,
        /// (degree, covered basis vectors, slice rank) per probed degree.
        coverage: Vec<(usize, usize, usize)>,
    },
    Failed {
        partial: Vec<Poly>,
        uncovered: Vec<Poly>,
    },
}

/// Greedy search for a small `F` inside the degree-`m` component whose block
/// ideal (stride `n`) contains every ideal slice up to `d_probe`.
///
/// Candidates are the block-aligned factors of the words appearing in
/// uncovered slice vectors. This is a heuristic: a found `F` is verified by
/// membership, but no minimality or existence claim is made.
pub fn search_f(
    t: &IdealTruncation,
    n: usize,
    m: usize,
    d_probe: usize,
) -> Result<CoverSearch, IdealError> {
    assert!(n >= 1 && m >= 1);
    if d_probe > t.d_max() {
        return Err(IdealError::DegreeOutOfRange(d_probe, t.d_max()));
    }

    let mut f_words: Vec<Word> = Vec::new();
    let to_polys = |words: &[Word]| -> Vec<Poly> {
        words
            .iter()
            .map(|w| Poly::monomial(t.field(), *w))
            .collect()
    };

    let mut uncovered = Vec::new();
    for d in 1..=d_probe {
        let slice = t.slice(d)?.clone();
        for v in slice.basis() {
            let ideal = BlockIdeal::new(t.field(), n, to_polys(&f_words))?;
            if ideal.membership(v)? {
                continue;
            }
            if d < m {
                // No block product can land below the F-degree.
                uncovered.push(v.clone());
                continue;
            }
            // Try the block-aligned factors of the vector's words.
            let mut covered = false;
            'candidates: for (word, _) in v.terms() {
                let mut k = 0usize;
                while n * k + m <= d {
                    let cand = word.block(n * k, m);
                    if !f_words.contains(&cand) {
                        let mut trial = f_words.clone();
                        trial.push(cand);
                        let trial_ideal = BlockIdeal::new(t.field(), n, to_polys(&trial))?;
                        if trial_ideal.membership(v)? {
                            f_words = trial;
                            covered = true;
                            break 'candidates;
                        }
                    }
                    k += 1;
                }
            }
            if !covered {
                uncovered.push(v.clone());
            }
        }
    }

    if !uncovered.is_empty() {
        return Ok(CoverSearch::Failed {
            partial: to_polys(&f_words),
            uncovered,
        });
    }

    // Verify the final set against every probed slice and record coverage.
    let f_set = to_polys(&f_words);
    let ideal = BlockIdeal::new(t.field(), n, f_set.clone())?;
    let mut coverage = Vec::new();
    for d in 1..=d_probe {
        let slice = t.slice(d)?;
        let mut covered = 0;
        for v in slice.basis() {
            if ideal.membership(v)? {
                covered += 1;
            }
        }
        coverage.push((d, covered, slice.rank()));
        if covered != slice.rank() {
            return Ok(CoverSearch::Failed {
                partial: f_set,
                uncovered: vec![],
            });
        }
    }
    Ok(CoverSearch::Found { f_set, coverage })
}
