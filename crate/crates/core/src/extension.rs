//! The polynomial extension in six commuting indeterminates.
//!
//! A collapsed word is expanded by substituting `X = x1 X1 + x2 X2 + x3 X3`
//! for each x letter and `Y = y1 X4 + y2 X5 + y3 X6` for each y letter and
//! collecting like commutative monomials. The coefficient sitting at the
//! commutative exponent vector `n` is then exactly the multidegree
//! component of the word at `n`; that bridge is what the freeness
//! certificates rest on, and it is tested exhaustively rather than assumed.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{Poly, PolyError};
use crate::scalar::FieldSpec;
use crate::word::{BinLetter, BinWord, Gen, MultiDegree, Word, WordError, MAX_ENUM_DEGREE};

/// Exponent vector of a monomial in the commuting indeterminates `X1..X6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommMono(pub [u32; 6]);

impl CommMono {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &CommMono) -> CommMono {
        let mut out = [0u32; 6];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *o = a + b;
        }
        CommMono(out)
    }

    pub fn as_multidegree(&self) -> MultiDegree {
        MultiDegree(self.0)
    }

    pub fn from_multidegree(n: &MultiDegree) -> CommMono {
        CommMono(n.0)
    }
}

impl fmt::Display for CommMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "X{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// An element of the extension, stored as a map from commutative monomials
/// to free-algebra coefficients. Images of degree-`d` collapsed words are
/// bihomogeneous: every exponent vector sums to `d` and every coefficient
/// is homogeneous of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    field: FieldSpec,
    word_degree: usize,
    terms: BTreeMap<CommMono, Poly>,
}

impl ExtElement {
    pub fn zero(field: FieldSpec, word_degree: usize) -> ExtElement {
        ExtElement {
            field,
            word_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn word_degree(&self) -> usize {
        self.word_degree
    }

    pub fn terms(&self) -> &BTreeMap<CommMono, Poly> {
        &self.terms
    }

    /// The free-algebra coefficient at an exponent vector (zero if absent).
    pub fn coefficient(&self, mono: &CommMono) -> Poly {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.field))
    }

    fn insert_term(&mut self, mono: CommMono, word: Word) -> Result<(), PolyError> {
        let unit = Poly::monomial(self.field, word);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(unit);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&unit)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    /// Product in the extension: exponent vectors add commutatively, the
    /// free-algebra coefficients multiply noncommutatively.
    pub fn mul(&self, other: &ExtElement) -> Result<ExtElement, PolyError> {
        let mut out = ExtElement::zero(self.field, self.word_degree + other.word_degree);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                let mono = ma.add(mb);
                let prod = pa.mul(pb)?;
                if prod.is_zero() {
                    continue;
                }
                match out.terms.entry(mono) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&prod)?;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Expands a collapsed word through the substitution, collecting by
/// commutative monomial. Each of the `3^deg` letter choices contributes one
/// word with its exponent vector.
pub fn xy_expand(field: FieldSpec, w: &BinWord) -> Result<ExtElement, ExtensionError> {
    let d = w.len();
    if d > MAX_ENUM_DEGREE {
        return Err(WordError::EnumTooLarge(d).into());
    }
    let mut out = ExtElement::zero(field, d);
    // Odometer over the three choices per letter.
    let mut choice = vec![0u8; d];
    loop {
        let mut letters = Vec::with_capacity(d);
        let mut expo = [0u32; 6];
        for (i, &pick) in choice.iter().enumerate() {
            let code = match w.letter(i) {
                BinLetter::X => pick,
                BinLetter::Y => 3 + pick,
            };
            letters.push(Gen::from_code(code).expect("valid code"));
            expo[code as usize] += 1;
        }
        let word = Word::from_gens(&letters)?;
        out.insert_term(CommMono(expo), word)?;

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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::component;
    use crate::word::feasible_multidegrees;

    const Q: FieldSpec = FieldSpec::Q;

    fn bw(s: &str) -> BinWord {
        s.parse().unwrap()
    }

    fn mono(s: &str) -> Poly {
        Poly::monomial(Q, s.parse().unwrap())
    }

    #[test]
    fn single_x_expands_to_three_terms() {
        let e = xy_expand(Q, &bw("x")).unwrap();
        assert_eq!(e.terms().len(), 3);
        assert_eq!(e.coefficient(&CommMono([1, 0, 0, 0, 0, 0])), mono("x1"));
        assert_eq!(e.coefficient(&CommMono([0, 1, 0, 0, 0, 0])), mono("x2"));
        assert_eq!(e.coefficient(&CommMono([0, 0, 1, 0, 0, 0])), mono("x3"));
    }

    #[test]
    fn xy_coefficient_at_x1x4() {
        let e = xy_expand(Q, &bw("xy")).unwrap();
        assert_eq!(e.coefficient(&CommMono([1, 0, 0, 1, 0, 0])), mono("x1y1"));
    }

    #[test]
    fn commuting_monomial_collects_both_orders() {
        let e = xy_expand(Q, &bw("xx")).unwrap();
        let expect = mono("x1x2").add(&mono("x2x1")).unwrap();
        assert_eq!(e.coefficient(&CommMono([1, 1, 0, 0, 0, 0])), expect);
    }

    #[test]
    fn coefficients_equal_components() {
        for z in [bw("x"), bw("y"), bw("xy"), bw("yx"), bw("xxy")] {
            for n in feasible_multidegrees(&z) {
                let e = xy_expand(Q, &z).unwrap();
                let coeff = e.coefficient(&CommMono::from_multidegree(&n));
                let comp = component(Q, &z, &n).unwrap();
                assert_eq!(coeff, comp, "word {z}, exponent {n}");
            }
        }
    }

    #[test]
    fn expansion_is_multiplicative() {
        let u = bw("xy");
        let v = bw("yx");
        let uv = u.concat(&v).unwrap();
        let lhs = xy_expand(Q, &uv).unwrap();
        let rhs = xy_expand(Q, &u)
            .unwrap()
            .mul(&xy_expand(Q, &v).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bihomogeneous_shape() {
        let e = xy_expand(Q, &bw("xyx")).unwrap();
        for (mono, poly) in e.terms() {
            assert_eq!(mono.total(), 3);
            assert!(poly.is_homogeneous_of(3));
        }
    }
}
