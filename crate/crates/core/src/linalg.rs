//! Exact sparse linear algebra on graded components: reduced bases, span
//! membership with coordinates, kernel-specified projections, and linear
//! maps given by images of monomials.
//!
//! Pivot convention: a row's pivot is its *smallest* word under the fixed
//! word order (terms are stored ascending, so the pivot is the leading
//! term). Everything downstream — projection complements in particular —
//! is defined relative to this choice and tested against it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::poly::{merge_terms, Poly, PolyError};
use crate::scalar::{FieldSpec, Scalar, ScalarError};
use crate::word::{enumerate_words, BinWord, Word, WordError};

/// Largest `6^d` for which a full monomial image table may be materialized.
pub const MAX_TABLE_ENTRIES: usize = 6_usize.pow(6);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected a homogeneous element of degree {expected}, found {found}")]
    NotHomogeneous { expected: usize, found: String },
    #[error("degree mismatch: map/space degree {expected}, element degree {found}")]
    DegreeMismatch { expected: usize, found: String },
    #[error("word {0} has no declared image")]
    OutsideDomain(String),
    #[error("6^{degree} = {entries} monomials exceeds the {MAX_TABLE_ENTRIES}-entry table cap")]
    TableTooLarge { degree: usize, entries: u128 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A subspace of the degree-`d` graded component, stored as a reduced basis:
/// each row is normalized at its pivot word, pivots are pairwise distinct,
/// and no pivot occurs in any other row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    field: FieldSpec,
    degree: usize,
    basis: Vec<Poly>,
    pivots: Vec<Word>,
}

impl GradedSubspace {
    pub fn zero(field: FieldSpec, degree: usize) -> GradedSubspace {
        GradedSubspace {
            field,
            degree,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn pivots(&self) -> &[Word] {
        &self.pivots
    }

    fn pivot_position(&self, w: &Word) -> Option<usize> {
        self.pivots.binary_search(w).ok()
    }

    /// The canonical residue of `v` modulo this subspace: pivot coordinates
    /// are eliminated, everything else is untouched.
    pub fn reduce(&self, v: &Poly) -> Result<Poly, LinalgError> {
        Ok(self.reduce_with_coords(v)?.0)
    }

    fn reduce_with_coords(&self, v: &Poly) -> Result<(Poly, Vec<Scalar>), LinalgError> {
        if v.field() != self.field {
            return Err(ScalarError::MixedFields(self.field, v.field()).into());
        }
        if !v.is_homogeneous_of(self.degree) {
            return Err(LinalgError::DegreeMismatch {
                expected: self.degree,
                found: v.to_string(),
            });
        }
        let mut coords = vec![self.field.zero(); self.basis.len()];
        let mut terms: Vec<(Word, Scalar)> = v.terms().to_vec();
        let mut i = 0;
        while i < terms.len() {
            if let Some(row) = self.pivot_position(&terms[i].0) {
                let c = terms[i].1.clone();
                // Subtracting c * basis[row] cannot introduce words below the
                // pivot, so the scan never moves backwards.
                let neg_c = c.neg();
                terms = merge_terms(&terms, self.basis[row].terms(), Some(&neg_c));
                coords[row] = coords[row].add_raw(&c);
            } else {
                i += 1;
            }
        }
        Ok((Poly::from_sorted_terms(self.field, terms), coords))
    }

    /// Span membership; on success also returns the coordinates of `v` in
    /// the reduced basis.
    pub fn contains(&self, v: &Poly) -> Result<SpanCheck, LinalgError> {
        let (residue, coords) = self.reduce_with_coords(v)?;
        if residue.is_zero() {
            Ok(SpanCheck {
                contained: true,
                coordinates: Some(coords),
            })
        } else {
            Ok(SpanCheck {
                contained: false,
                coordinates: None,
            })
        }
    }
}

/// Outcome of a span-membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCheck {
    pub contained: bool,
    /// Elimination coefficients against the reduced basis, present iff
    /// contained.
    pub coordinates: Option<Vec<Scalar>>,
}

/// Incremental echelonizer. Push spanning vectors in any order; `finish`
/// back-substitutes into the canonical reduced basis.
pub struct RrefBuilder {
    field: FieldSpec,
    degree: usize,
    rows: BTreeMap<Word, Vec<(Word, Scalar)>>,
}

impl RrefBuilder {
    pub fn new(field: FieldSpec, degree: usize) -> RrefBuilder {
        RrefBuilder {
            field,
            degree,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Forward-eliminates `v` against the current rows; keeps it as a new
    /// pivot row when independent. Returns whether the rank grew.
    pub fn push(&mut self, v: &Poly) -> Result<bool, LinalgError> {
        if v.field() != self.field {
            return Err(ScalarError::MixedFields(self.field, v.field()).into());
        }
        if !v.is_homogeneous_of(self.degree) {
            return Err(LinalgError::NotHomogeneous {
                expected: self.degree,
                found: v.to_string(),
            });
        }
        let mut terms: Vec<(Word, Scalar)> = v.terms().to_vec();
        loop {
            let Some((lead, coeff)) = terms.first().cloned() else {
                return Ok(false);
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let neg_c = coeff.neg();
                    terms = merge_terms(&terms, row, Some(&neg_c));
                }
                None => {
                    let inv = coeff.inverse().expect("leading coefficient is nonzero");
                    let normalized = terms
                        .into_iter()
                        .map(|(w, c)| (w, c.mul_raw(&inv)))
                        .collect();
                    self.rows.insert(lead, normalized);
                    return Ok(true);
                }
            }
        }
    }

    /// Back-substitution pass, then assembly in ascending pivot order.
    pub fn finish(self) -> GradedSubspace {
        let field = self.field;
        let degree = self.degree;
        let pivots: Vec<Word> = self.rows.keys().copied().collect();
        let mut reduced: BTreeMap<Word, Vec<(Word, Scalar)>> = BTreeMap::new();
        // Descending pivot order: every pivot referenced from a row's tail is
        // larger than the row's own pivot, hence already reduced.
        for (&pivot, row) in self.rows.iter().rev() {
            let mut terms = row.clone();
            let mut i = 1;
            while i < terms.len() {
                let w = terms[i].0;
                if w != pivot && pivots.binary_search(&w).is_ok() {
                    let neg_c = terms[i].1.neg();
                    terms = merge_terms(&terms, &reduced[&w], Some(&neg_c));
                } else {
                    i += 1;
                }
            }
            reduced.insert(pivot, terms);
        }
        let basis = reduced
            .into_values()
            .map(|terms| Poly::from_sorted_terms(field, terms))
            .collect();
        GradedSubspace {
            field,
            degree,
            basis,
            pivots,
        }
    }
}

/// Reduced basis of the span of `vectors` inside the degree-`d` component.
pub fn rref(
    field: FieldSpec,
    degree: usize,
    vectors: &[Poly],
) -> Result<GradedSubspace, LinalgError> {
    let mut builder = RrefBuilder::new(field, degree);
    for v in vectors {
        builder.push(v)?;
    }
    Ok(builder.finish())
}

/// A scalar-linear self-map of the degree-`d` component, given by images of
/// monomials. The domain may be a declared sub-basis; applying the map to a
/// word outside it is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    field: FieldSpec,
    degree: usize,
    images: BTreeMap<Word, Poly>,
}

impl LinMap {
    pub fn from_images(
        field: FieldSpec,
        degree: usize,
        images: BTreeMap<Word, Poly>,
    ) -> Result<LinMap, LinalgError> {
        for (w, img) in &images {
            if w.len() != degree {
                return Err(LinalgError::DegreeMismatch {
                    expected: degree,
                    found: w.to_string(),
                });
            }
            if !img.is_homogeneous_of(degree) {
                return Err(LinalgError::NotHomogeneous {
                    expected: degree,
                    found: img.to_string(),
                });
            }
            if img.field() != field {
                return Err(ScalarError::MixedFields(field, img.field()).into());
            }
        }
        Ok(LinMap {
            field,
            degree,
            images,
        })
    }

    /// The identity on the full monomial basis of the degree-`d` component.
    pub fn identity(field: FieldSpec, degree: usize) -> Result<LinMap, LinalgError> {
        check_table_size(degree)?;
        let images = enumerate_words(degree)?
            .into_iter()
            .map(|w| (w, Poly::monomial(field, w)))
            .collect();
        Ok(LinMap {
            field,
            degree,
            images,
        })
    }

    /// The zero map on the full monomial basis.
    pub fn zero_map(field: FieldSpec, degree: usize) -> Result<LinMap, LinalgError> {
        check_table_size(degree)?;
        let images = enumerate_words(degree)?
            .into_iter()
            .map(|w| (w, Poly::zero(field)))
            .collect();
        Ok(LinMap {
            field,
            degree,
            images,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &BTreeMap<Word, Poly> {
        &self.images
    }

    pub fn image_of_word(&self, w: &Word) -> Result<&Poly, LinalgError> {
        self.images
            .get(w)
            .ok_or_else(|| LinalgError::OutsideDomain(w.to_string()))
    }

    /// Scalar-linear extension of the image table.
    pub fn apply(&self, v: &Poly) -> Result<Poly, LinalgError> {
        if v.field() != self.field {
            return Err(ScalarError::MixedFields(self.field, v.field()).into());
        }
        if !v.is_homogeneous_of(self.degree) {
            return Err(LinalgError::DegreeMismatch {
                expected: self.degree,
                found: v.to_string(),
            });
        }
        let mut acc = Poly::zero(self.field);
        for (w, c) in v.terms() {
            let img = self.image_of_word(w)?;
            acc = acc.add(&img.scale(c)?)?;
        }
        Ok(acc)
    }
}

fn check_table_size(degree: usize) -> Result<(), LinalgError> {
    let entries = 6u128.pow(degree as u32);
    if entries > MAX_TABLE_ENTRIES as u128 {
        return Err(LinalgError::TableTooLarge { degree, entries });
    }
    Ok(())
}

/// Idempotent self-map with prescribed kernel, in compact form: applying it
/// reduces modulo the kernel's reduced basis, which zeroes the pivot
/// coordinates and fixes the span of the non-pivot words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    kernel: GradedSubspace,
}

impl Projection {
    pub fn with_kernel(
        field: FieldSpec,
        degree: usize,
        kernel_gens: &[Poly],
    ) -> Result<Projection, LinalgError> {
        Ok(Projection {
            kernel: rref(field, degree, kernel_gens)?,
        })
    }

    pub fn kernel(&self) -> &GradedSubspace {
        &self.kernel
    }

    pub fn degree(&self) -> usize {
        self.kernel.degree()
    }

    pub fn apply(&self, v: &Poly) -> Result<Poly, LinalgError> {
        self.kernel.reduce(v)
    }
}

/// The projection as an explicit image table over the whole monomial basis.
///
/// Empty kernel generators give the identity map.
pub fn projection_with_kernel(
    field: FieldSpec,
    degree: usize,
    kernel_gens: &[Poly],
) -> Result<LinMap, LinalgError> {
    check_table_size(degree)?;
    let proj = Projection::with_kernel(field, degree, kernel_gens)?;
    let mut images = BTreeMap::new();
    for w in enumerate_words(degree)? {
        images.insert(w, proj.apply(&Poly::monomial(field, w))?);
    }
    LinMap::from_images(field, degree, images)
}

/// Wire form of a subspace: reduced basis rows plus pivot words.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct SubspaceJson {
    pub degree: usize,
    pub basis: Vec<Vec<crate::poly::TermJson>>,
    pub pivots: Vec<String>,
}

pub fn subspace_to_json(s: &GradedSubspace) -> SubspaceJson {
    SubspaceJson {
        degree: s.degree(),
        basis: s.basis().iter().map(crate::poly::poly_to_json).collect(),
        pivots: s.pivots().iter().map(|w| w.to_string()).collect(),
    }
}

/// Replays a serialized subspace; the rows are re-echelonized, so a
/// round-trip reproduces the identical reduced basis.
pub fn subspace_from_json(
    field: FieldSpec,
    json: &SubspaceJson,
) -> Result<GradedSubspace, LinalgError> {
    let rows: Result<Vec<Poly>, PolyError> = json
        .basis
        .iter()
        .map(|terms| crate::poly::poly_from_json(field, terms))
        .collect();
    rref(field, json.degree, &rows?)
}

/// Wire form of a linear map: one `{word, image}` entry per domain word.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct LinMapJson {
    pub degree: usize,
    pub images: Vec<LinMapEntryJson>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct LinMapEntryJson {
    pub word: String,
    pub image: Vec<crate::poly::TermJson>,
}

pub fn linmap_to_json(m: &LinMap) -> LinMapJson {
    LinMapJson {
        degree: m.degree(),
        images: m
            .images()
            .iter()
            .map(|(w, img)| LinMapEntryJson {
                word: w.to_string(),
                image: crate::poly::poly_to_json(img),
            })
            .collect(),
    }
}

pub fn linmap_from_json(field: FieldSpec, json: &LinMapJson) -> Result<LinMap, LinalgError> {
    let mut images = BTreeMap::new();
    for entry in &json.images {
        let word: Word = entry.word.parse()?;
        let image = crate::poly::poly_from_json(field, &entry.image)?;
        images.insert(word, image);
    }
    LinMap::from_images(field, json.degree, images)
}

/// Report of one factor-lemma instance: whether the hypothesis (the
/// product map sends every component of `z` into the image of the smaller
/// span) holds, whether each factor-side conclusion holds, and whether the
/// implication hypothesis => (f-side or g-side) holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorFactorReport {
    pub hypothesis: bool,
    pub f_side: bool,
    pub g_side: bool,
}

impl TensorFactorReport {
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis || self.f_side || self.g_side
    }
}

impl fmt::Display for TensorFactorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hypothesis={} f_side={} g_side={} implication={}",
            self.hypothesis,
            self.f_side,
            self.g_side,
            self.implication_holds()
        )
    }
}

/// Does `map` send every multidegree component of `z` into the image of the
/// span of words strictly below `z`?
pub fn kills_components_mod_smaller(map: &LinMap, z: &BinWord) -> Result<bool, LinalgError> {
    let field = map.field();
    let mut images = Vec::new();
    for s in crate::poly::s_basis(z)? {
        images.push(map.apply(&Poly::monomial(field, s))?);
    }
    let span = rref(field, map.degree(), &images)?;
    for n in crate::word::feasible_multidegrees(z) {
        let comp = crate::poly::component(field, z, &n)?;
        let mapped = map.apply(&comp)?;
        if !span.contains(&mapped)?.contained {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the product map `h(ww') = f(w) g(w')` on the degree `p+q`
/// component and evaluates the factor-lemma shape for the split `z = uv`
/// with `deg u = deg f`, `deg v = deg g`.
pub fn tensor_check_factor(
    f: &LinMap,
    g: &LinMap,
    z: &BinWord,
) -> Result<TensorFactorReport, LinalgError> {
    let p = f.degree();
    let q = g.degree();
    assert!(p >= 1 && q >= 1, "factor degrees must be positive");
    assert_eq!(z.len(), p + q, "split degrees must sum to deg z");
    let field = f.field();
    if g.field() != field {
        return Err(ScalarError::MixedFields(field, g.field()).into());
    }

    check_table_size(p + q)?;
    let mut h_images = BTreeMap::new();
    for w in enumerate_words(p + q)? {
        let left = f.image_of_word(&w.block(0, p))?;
        let right = g.image_of_word(&w.block(p, q))?;
        h_images.insert(w, left.mul(right)?);
    }
    let h = LinMap::from_images(field, p + q, h_images)?;

    let u = z.block(0, p);
    let v = z.block(p, q);
    Ok(TensorFactorReport {
        hypothesis: kills_components_mod_smaller(&h, z)?,
        f_side: kills_components_mod_smaller(f, &u)?,
        g_side: kills_components_mod_smaller(g, &v)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    const F2: FieldSpec = FieldSpec::Fp { p: 2 };
    const Q: FieldSpec = FieldSpec::Q;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn mono(field: FieldSpec, s: &str) -> Poly {
        Poly::monomial(field, w(s))
    }

    #[test]
    fn rref_elimination_example() {
        // {x1+x2, x2} reduces to {x1, x2}.
        let v1 = mono(Q, "x1").add(&mono(Q, "x2")).unwrap();
        let v2 = mono(Q, "x2");
        let s = rref(Q, 1, &[v1, v2]).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.basis(), &[mono(Q, "x1"), mono(Q, "x2")]);
        assert_eq!(s.pivots(), &[w("x1"), w("x2")]);
    }

    #[test]
    fn rref_of_nothing_is_zero_subspace() {
        let s = rref(Q, 3, &[]).unwrap();
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn rref_over_f2_example() {
        // {x1x2 + x2x1, x1x2} has rank 2 with pivots {x1x2, x2x1}.
        let v1 = mono(F2, "x1x2").add(&mono(F2, "x2x1")).unwrap();
        let v2 = mono(F2, "x1x2");
        let s = rref(F2, 2, &[v1, v2]).unwrap();
        assert_eq!(s.rank(), 2);
        let mut pivots = s.pivots().to_vec();
        pivots.sort();
        assert_eq!(pivots, vec![w("x1x2"), w("x2x1")]);
    }

    #[test]
    fn rref_rejects_nonhomogeneous_input() {
        let v = mono(Q, "x1").add(&mono(Q, "x1x2")).unwrap();
        assert!(rref(Q, 2, &[v]).is_err());
    }

    #[test]
    fn rref_is_idempotent_on_its_basis() {
        let vecs = vec![
            mono(Q, "x1y1").add(&mono(Q, "y1x1")).unwrap(),
            mono(Q, "x1y1").sub(&mono(Q, "x2x2")).unwrap(),
            mono(Q, "y1x1"),
        ];
        let s = rref(Q, 2, &vecs).unwrap();
        let again = rref(Q, 2, s.basis()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn in_span_examples() {
        let s = rref(Q, 1, &[mono(Q, "x1"), mono(Q, "y1")]).unwrap();
        let v = mono(Q, "x1").add(&mono(Q, "y1")).unwrap();
        let check = s.contains(&v).unwrap();
        assert!(check.contained);
        // coordinates recombine to v
        let coords = check.coordinates.unwrap();
        let mut rebuilt = Poly::zero(Q);
        for (c, b) in coords.iter().zip(s.basis()) {
            rebuilt = rebuilt.add(&b.scale(c).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, v);

        let s2 = rref(Q, 1, &[mono(Q, "x1"), mono(Q, "x2")]).unwrap();
        assert!(!s2.contains(&mono(Q, "x3")).unwrap().contained);

        // The components of the minimal degree-2 class span its whole
        // collapse class, so x1x2 + x2x1 lies inside.
        let z: crate::word::BinWord = "xx".parse().unwrap();
        let comps: Vec<Poly> = crate::word::feasible_multidegrees(&z)
            .iter()
            .map(|n| crate::poly::component(Q, &z, n).unwrap())
            .collect();
        let span = rref(Q, 2, &comps).unwrap();
        let v = mono(Q, "x1x2").add(&mono(Q, "x2x1")).unwrap();
        assert!(span.contains(&v).unwrap().contained);
    }

    #[test]
    fn in_span_degree_mismatch_is_an_error() {
        let s = rref(Q, 1, &[mono(Q, "x1")]).unwrap();
        assert!(s.contains(&mono(Q, "x1x1")).is_err());
    }

    #[test]
    fn projection_kernel_example() {
        // Kernel {x1+x2}: pivot x1, so c(x1) = -x2, c(x2) = x2, c(x1+x2) = 0.
        let k = mono(Q, "x1").add(&mono(Q, "x2")).unwrap();
        let c = projection_with_kernel(Q, 1, std::slice::from_ref(&k)).unwrap();
        assert_eq!(c.apply(&mono(Q, "x1")).unwrap(), mono(Q, "x2").neg());
        assert_eq!(c.apply(&mono(Q, "x2")).unwrap(), mono(Q, "x2"));
        assert!(c.apply(&k).unwrap().is_zero());
        // idempotent
        let img = c.apply(&mono(Q, "x1")).unwrap();
        assert_eq!(c.apply(&img).unwrap(), img);
    }

    #[test]
    fn empty_kernel_gives_identity() {
        let c = projection_with_kernel(Q, 1, &[]).unwrap();
        let id = LinMap::identity(Q, 1).unwrap();
        assert_eq!(c, id);
    }

    #[test]
    fn apply_examples() {
        let id = LinMap::identity(Q, 1).unwrap();
        let two_x1 = mono(Q, "x1").scale(&Q.from_i64(2)).unwrap();
        assert_eq!(id.apply(&two_x1).unwrap(), two_x1);
        assert!(id.apply(&Poly::zero(Q)).unwrap().is_zero());
    }

    #[test]
    fn apply_outside_domain_is_an_error() {
        let images: BTreeMap<Word, Poly> = [(w("x1"), mono(Q, "x1"))].into_iter().collect();
        let m = LinMap::from_images(Q, 1, images).unwrap();
        assert!(matches!(
            m.apply(&mono(Q, "x2")),
            Err(LinalgError::OutsideDomain(_))
        ));
    }

    #[test]
    fn projection_rank_accounting() {
        // kernel rank 2 in H_1 leaves image rank 4
        let gens = vec![mono(Q, "x1").add(&mono(Q, "y2")).unwrap(), mono(Q, "x3")];
        let c = projection_with_kernel(Q, 1, &gens).unwrap();
        let images: Vec<Poly> = c.images().values().cloned().collect();
        let image_space = rref(Q, 1, &images).unwrap();
        assert_eq!(image_space.rank(), 6 - 2);
        // kernel is exactly the given span
        for g in &gens {
            assert!(c.apply(g).unwrap().is_zero());
        }
    }

    #[test]
    fn tensor_factor_identity_case() {
        // Identity maps preserve independence: hypothesis false, implication
        // vacuously true.
        let f = LinMap::identity(Q, 1).unwrap();
        let g = LinMap::identity(Q, 1).unwrap();
        let rep = tensor_check_factor(&f, &g, &"xy".parse().unwrap()).unwrap();
        assert!(!rep.hypothesis);
        assert!(rep.implication_holds());
    }

    #[test]
    fn tensor_factor_zero_map_case() {
        let f = LinMap::zero_map(Q, 1).unwrap();
        let g = LinMap::identity(Q, 1).unwrap();
        let rep = tensor_check_factor(&f, &g, &"xy".parse().unwrap()).unwrap();
        assert!(rep.hypothesis);
        assert!(rep.f_side);
        assert!(rep.implication_holds());
    }

    #[test]
    fn reduce_produces_canonical_residue() {
        let s = rref(Q, 1, &[mono(Q, "x1").add(&mono(Q, "x2")).unwrap()]).unwrap();
        // x1 reduces to -x2 (pivot x1 eliminated)
        let r = s.reduce(&mono(Q, "x1")).unwrap();
        assert_eq!(r, mono(Q, "x2").neg());
        // residue is a fixed point
        assert_eq!(s.reduce(&r).unwrap(), r);
    }

    #[test]
    fn subspace_and_map_json_round_trip() {
        let s = rref(
            Q,
            1,
            &[mono(Q, "x1").add(&mono(Q, "x2")).unwrap(), mono(Q, "y1")],
        )
        .unwrap();
        let json = subspace_to_json(&s);
        assert_eq!(json.pivots, vec!["x1", "y1"]);
        let back = subspace_from_json(Q, &json).unwrap();
        assert_eq!(s, back);

        let c = projection_with_kernel(Q, 1, &[mono(Q, "x3")]).unwrap();
        let mj = linmap_to_json(&c);
        let back = linmap_from_json(Q, &mj).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn coordinates_are_elimination_coefficients() {
        let b1 = mono(Q, "x1").add(&mono(Q, "x2")).unwrap();
        let b2 = mono(Q, "x2").add(&mono(Q, "x3")).unwrap();
        let s = rref(Q, 1, &[b1, b2]).unwrap();
        let v = Poly::from_terms(
            Q,
            [
                (w("x1"), Q.from_i64(2)),
                (w("x2"), Q.from_i64(-1)),
                (w("x3"), Q.from_i64(-3)),
            ],
        )
        .unwrap();
        let check = s.contains(&v).unwrap();
        assert!(check.contained);
        let coords: Vec<Scalar> = check.coordinates.unwrap();
        let mut rebuilt = Poly::zero(Q);
        for (c, b) in coords.iter().zip(s.basis()) {
            rebuilt = rebuilt.add(&b.scale(c).unwrap()).unwrap();
        }
        assert_eq!(rebuilt, v);
    }
}
