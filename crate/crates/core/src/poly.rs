//! Graded polynomials in the free algebra on the six generators, and the
//! span machinery built on the collapse map: the monomial sets `Q(z)` and
//! `S(z)`, multidegree components, and the convolution identity relating a
//! product's components to its factors' components.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar, ScalarError};
use crate::word::{
    beta, compositions, enumerate_binwords, BinLetter, BinWord, MultiDegree, Word, WordError,
    MAX_ENUM_DEGREE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("term count {0} exceeds the cap {1}")]
    TooManyTerms(usize, usize),
}

/// A finite scalar combination of words; only nonzero coefficients are
/// stored, terms sorted by the fixed word order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    terms: Vec<(Word, Scalar)>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Poly {
        Poly {
            field,
            terms: Vec::new(),
        }
    }

    /// The multiplicative unit (the empty word with coefficient one).
    pub fn one(field: FieldSpec) -> Poly {
        Poly {
            field,
            terms: vec![(Word::empty(), field.one())],
        }
    }

    /// A single word with coefficient one.
    pub fn monomial(field: FieldSpec, word: Word) -> Poly {
        Poly {
            field,
            terms: vec![(word, field.one())],
        }
    }

    pub fn term(field: FieldSpec, word: Word, coeff: Scalar) -> Result<Poly, PolyError> {
        if coeff.field() != field {
            return Err(ScalarError::MixedFields(field, coeff.field()).into());
        }
        if coeff.is_zero() {
            return Ok(Poly::zero(field));
        }
        Ok(Poly {
            field,
            terms: vec![(word, coeff)],
        })
    }

    /// Accumulates arbitrary (word, coefficient) pairs, merging duplicates
    /// and dropping zeros.
    pub fn from_terms<I>(field: FieldSpec, iter: I) -> Result<Poly, PolyError>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (word, coeff) in iter {
            if coeff.field() != field {
                return Err(ScalarError::MixedFields(field, coeff.field()).into());
            }
            match acc.entry(word) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add_raw(&coeff);
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Ok(Poly {
            field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Sum of the given words, all with coefficient one.
    pub fn sum_of_words<I>(field: FieldSpec, words: I) -> Poly
    where
        I: IntoIterator<Item = Word>,
    {
        Poly::from_terms(field, words.into_iter().map(|w| (w, field.one())))
            .expect("unit coefficients are in-field")
    }

    pub(crate) fn from_sorted_terms(field: FieldSpec, terms: Vec<(Word, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|p| p[0].0 < p[1].0));
        debug_assert!(terms
            .iter()
            .all(|(_, c)| !c.is_zero() && c.field() == field));
        Poly { field, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &[(Word, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest word degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.iter().map(|(w, _)| w.len()).max()
    }

    /// Smallest word in the support (the pivot candidate), `None` for zero.
    pub fn leading_word(&self) -> Option<Word> {
        self.terms.first().map(|(w, _)| *w)
    }

    pub fn coeff(&self, word: &Word) -> Option<&Scalar> {
        self.terms
            .binary_search_by(|(w, _)| w.cmp(word))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// True when every term has degree `d` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.iter().all(|(w, _)| w.len() == d)
    }

    /// The common degree of all terms, `None` when zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.terms.first()?.0.len();
        self.is_homogeneous_of(d).then_some(d)
    }

    fn check_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::MixedFields(self.field, other.field).into())
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(Poly {
            field: self.field,
            terms: merge_terms(&self.terms, &other.terms, None),
        })
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        let minus_one = self.field.one().neg();
        Ok(Poly {
            field: self.field,
            terms: merge_terms(&self.terms, &other.terms, Some(&minus_one)),
        })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (*w, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Poly, PolyError> {
        if s.field() != self.field {
            return Err(ScalarError::MixedFields(self.field, s.field()).into());
        }
        if s.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        Ok(Poly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (*w, c.mul_raw(s))).collect(),
        })
    }

    /// Noncommutative product. Degrees add; words beyond the length cap are
    /// a configuration error, never a silent truncation.
    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let word = wa.concat(wb)?;
                let coeff = ca.mul_raw(cb);
                match acc.entry(word) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(coeff);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add_raw(&coeff);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(Poly {
            field: self.field,
            terms: acc.into_iter().collect(),
        })
    }

    /// Right-multiplication by a single word.
    pub fn mul_word(&self, word: &Word) -> Result<Poly, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            terms.push((w.concat(word)?, c.clone()));
        }
        terms.sort_by_key(|a| a.0);
        Ok(Poly {
            field: self.field,
            terms,
        })
    }

    /// Left-multiplication by a single word.
    pub fn word_mul(&self, word: &Word) -> Result<Poly, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            terms.push((word.concat(w)?, c.clone()));
        }
        terms.sort_by_key(|a| a.0);
        Ok(Poly {
            field: self.field,
            terms,
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// `a + scale*b` (or `a + b` when `scale` is `None`) over sorted term lists.
pub(crate) fn merge_terms(
    a: &[(Word, Scalar)],
    b: &[(Word, Scalar)],
    scale: Option<&Scalar>,
) -> Vec<(Word, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(scaled(&b[j], scale));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let (w, sb) = scaled(&b[j], scale);
                debug_assert_eq!(w, a[i].0);
                let c = a[i].1.add_raw(&sb);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|t| scaled(t, scale)));
    out
}

fn scaled(term: &(Word, Scalar), scale: Option<&Scalar>) -> (Word, Scalar) {
    match scale {
        None => term.clone(),
        Some(s) => (term.0, term.1.mul_raw(s)),
    }
}

/// JSON form of a single term, `{"word": "x1y2", "coeff": "-1/2"}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub word: String,
    pub coeff: String,
}

/// Serializes a polynomial as an array of term objects.
pub fn poly_to_json(p: &Poly) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(w, c)| TermJson {
            word: w.to_string(),
            coeff: c.to_string(),
        })
        .collect()
}

/// Parses the array-of-terms form; the field decides coefficient parsing.
pub fn poly_from_json(field: FieldSpec, terms: &[TermJson]) -> Result<Poly, PolyError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let word: Word = t.word.parse()?;
        let coeff = field.parse_scalar(&t.coeff)?;
        parsed.push((word, coeff));
    }
    Poly::from_terms(field, parsed)
}

/// The monomial basis of `Q(z)`: all words of degree `deg z` collapsing to
/// `z`, in ascending word order (`3^deg z` of them).
pub fn q_basis(z: &BinWord) -> Result<Vec<Word>, WordError> {
    let d = z.len();
    if d > MAX_ENUM_DEGREE {
        return Err(WordError::EnumTooLarge(d));
    }
    let mut out = Vec::with_capacity(3usize.pow(d as u32));
    // Odometer over the per-position index choices 1..3.
    let mut choice = vec![0u8; d];
    loop {
        let letters: Vec<crate::word::Gen> = (0..d)
            .map(|i| {
                let base = match z.letter(i) {
                    BinLetter::X => 0,
                    BinLetter::Y => 3,
                };
                crate::word::Gen::from_code(base + choice[i]).expect("valid code")
            })
            .collect();
        out.push(Word::from_gens(&letters).expect("degree under cap"));
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if choice[i] < 2 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
        }
    }
}

/// The monomial basis of `S(z)`: all words of degree `deg z` whose collapse
/// strictly precedes `z`, sorted in ascending word order.
pub fn s_basis(z: &BinWord) -> Result<Vec<Word>, WordError> {
    let mut out = Vec::new();
    for smaller in enumerate_binwords(z.len())? {
        if smaller.lex_lt(z) {
            out.extend(q_basis(&smaller)?);
        }
    }
    out.sort();
    Ok(out)
}

/// The multidegree component `z(n1, ..., n6)`: the coefficient-one sum of
/// the words in `Q(z)` with the prescribed occurrence counts. Zero by
/// convention when the counts do not match the x/y letter totals of `z`.
pub fn component(field: FieldSpec, z: &BinWord, n: &MultiDegree) -> Result<Poly, WordError> {
    if !n.feasible_for(z) {
        return Ok(Poly::zero(field));
    }
    let words: Vec<Word> = q_basis(z)?
        .into_iter()
        .filter(|w| w.multidegree() == *n)
        .collect();
    Ok(Poly::sum_of_words(field, words))
}

/// Component of a word argument: the word is collapsed first.
pub fn component_of_word(field: FieldSpec, w: &Word, n: &MultiDegree) -> Result<Poly, WordError> {
    component(field, &beta(w), n)
}

/// Both routes of the convolution identity for `z = uv`: the component of
/// the product, and the sum of factor-component products over all splits of
/// the multidegree giving `deg u` to the left factor. Callers assert the two
/// are equal.
pub fn convolution_sides(
    field: FieldSpec,
    u: &BinWord,
    v: &BinWord,
    n: &MultiDegree,
) -> Result<(Poly, Poly), PolyError> {
    let z = u.concat(v)?;
    let left = component(field, &z, n)?;

    let mut right = Poly::zero(field);
    for split in compositions(u.len() as u32, 6) {
        let r = MultiDegree([split[0], split[1], split[2], split[3], split[4], split[5]]);
        let Some(rest) = n.checked_sub(&r) else {
            continue;
        };
        let cu = component(field, u, &r)?;
        if cu.is_zero() {
            continue;
        }
        let cv = component(field, v, &rest)?;
        if cv.is_zero() {
            continue;
        }
        right = right.add(&cu.mul(&cv)?)?;
    }
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::enumerate_words;

    const F2: FieldSpec = FieldSpec::Fp { p: 2 };

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn b(s: &str) -> BinWord {
        s.parse().unwrap()
    }

    fn qmono(s: &str) -> Poly {
        Poly::monomial(FieldSpec::Q, w(s))
    }

    #[test]
    fn mul_is_concatenation_on_words() {
        assert_eq!(qmono("x1").mul(&qmono("y1")).unwrap(), qmono("x1y1"));
    }

    #[test]
    fn mul_distributes() {
        let a = qmono("x1").add(&qmono("x2")).unwrap();
        let prod = a.mul(&qmono("x1")).unwrap();
        let expect = qmono("x1x1").add(&qmono("x2x1")).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn one_is_the_unit() {
        let a = qmono("x1y2").add(&qmono("y3")).unwrap();
        assert_eq!(a.mul(&Poly::one(FieldSpec::Q)).unwrap(), a);
        assert_eq!(Poly::one(FieldSpec::Q).mul(&a).unwrap(), a);
    }

    #[test]
    fn mixed_field_mul_is_an_error() {
        let a = qmono("x1");
        let c = Poly::monomial(F2, w("x1"));
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = qmono("x1");
        assert!(a.sub(&a).unwrap().is_zero());
        let b2 = Poly::monomial(F2, w("x1"));
        assert!(b2.add(&b2).unwrap().is_zero());
    }

    #[test]
    fn q_basis_examples() {
        assert_eq!(q_basis(&b("x")).unwrap(), vec![w("x1"), w("x2"), w("x3")]);
        assert_eq!(q_basis(&BinWord::empty()).unwrap(), vec![Word::empty()]);

        // Independent route: filter all 36 degree-2 words by their collapse.
        let brute: Vec<Word> = enumerate_words(2)
            .unwrap()
            .into_iter()
            .filter(|word| beta(word) == b("xy"))
            .collect();
        assert_eq!(q_basis(&b("xy")).unwrap(), brute);
        assert_eq!(brute.len(), 9);
    }

    #[test]
    fn s_basis_examples() {
        // Only xx precedes xy at degree 2, so S(xy) is the 9 words x_i x_j.
        let s = s_basis(&b("xy")).unwrap();
        assert_eq!(s, q_basis(&b("xx")).unwrap());
        assert_eq!(s.len(), 9);

        assert!(s_basis(&b("xx")).unwrap().is_empty());

        // xx, xy, yx all precede yy: 27 words.
        let brute: Vec<Word> = enumerate_words(2)
            .unwrap()
            .into_iter()
            .filter(|word| beta(word).lex_lt(&b("yy")))
            .collect();
        let mut got = s_basis(&b("yy")).unwrap();
        got.sort();
        assert_eq!(got, brute);
        assert_eq!(got.len(), 27);
    }

    #[test]
    fn component_examples() {
        let c = component(FieldSpec::Q, &b("xy"), &MultiDegree([0, 1, 0, 0, 0, 1])).unwrap();
        assert_eq!(c, qmono("x2y3"));

        // x-count mismatch: zero by convention.
        let z = component(FieldSpec::Q, &b("xy"), &MultiDegree([1, 1, 0, 0, 0, 0])).unwrap();
        assert!(z.is_zero());

        let c2 = component(FieldSpec::Q, &b("xx"), &MultiDegree([1, 1, 0, 0, 0, 0])).unwrap();
        assert_eq!(c2, qmono("x1x2").add(&qmono("x2x1")).unwrap());
    }

    #[test]
    fn component_matches_full_monomial_filter() {
        // Independent route: filter all of M_d by collapse and multidegree.
        for z in [b("xy"), b("yx"), b("xxy")] {
            for n in crate::word::feasible_multidegrees(&z) {
                let direct = component(FieldSpec::Q, &z, &n).unwrap();
                let brute: Vec<Word> = enumerate_words(z.len())
                    .unwrap()
                    .into_iter()
                    .filter(|word| beta(word) == z && word.multidegree() == n)
                    .collect();
                assert_eq!(direct, Poly::sum_of_words(FieldSpec::Q, brute));
            }
        }
    }

    #[test]
    fn component_of_word_collapses_first() {
        // A word argument is collapsed before the class lookup, so any
        // representative of the class gives the same components.
        let n = MultiDegree([1, 1, 0, 0, 0, 0]);
        let via_word = component_of_word(FieldSpec::Q, &w("x3x3"), &n).unwrap();
        let via_class = component(FieldSpec::Q, &b("xx"), &n).unwrap();
        assert_eq!(via_word, via_class);
        assert_eq!(via_word, qmono("x1x2").add(&qmono("x2x1")).unwrap());
    }

    #[test]
    fn convolution_examples() {
        let (l, r) = convolution_sides(
            FieldSpec::Q,
            &b("x"),
            &b("y"),
            &MultiDegree([1, 0, 0, 0, 1, 0]),
        )
        .unwrap();
        assert_eq!(l, qmono("x1y2"));
        assert_eq!(r, qmono("x1y2"));

        let (l, r) = convolution_sides(
            FieldSpec::Q,
            &b("x"),
            &b("x"),
            &MultiDegree([1, 1, 0, 0, 0, 0]),
        )
        .unwrap();
        let expect = qmono("x1x2").add(&qmono("x2x1")).unwrap();
        assert_eq!(l, expect);
        assert_eq!(r, expect);

        // y-count mismatch for xy: both sides vanish.
        let (l, r) = convolution_sides(
            FieldSpec::Q,
            &b("x"),
            &b("y"),
            &MultiDegree([2, 0, 0, 0, 0, 0]),
        )
        .unwrap();
        assert!(l.is_zero());
        assert!(r.is_zero());
    }

    #[test]
    fn poly_json_round_trip() {
        let p = qmono("x1x2")
            .scale(&FieldSpec::Q.parse_scalar("-1/2").unwrap())
            .unwrap()
            .add(&qmono("y1"))
            .unwrap();
        let json = poly_to_json(&p);
        let back = poly_from_json(FieldSpec::Q, &json).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn display_shapes() {
        assert_eq!(Poly::zero(FieldSpec::Q).to_string(), "0");
        assert_eq!(Poly::one(FieldSpec::Q).to_string(), "1");
        let p = qmono("x1")
            .scale(&FieldSpec::Q.parse_scalar("2").unwrap())
            .unwrap();
        assert_eq!(p.to_string(), "2*x1");
    }
}
