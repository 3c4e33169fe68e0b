//! Words over the six generators, their two-letter collapses, and
//! multidegrees.
//!
//! The alphabet is fixed: three x-type generators `x1, x2, x3` and three
//! y-type generators `y1, y2, y3`. A [`Word`] is a monomial in the free
//! algebra on those six letters; a [`BinWord`] is its shadow over the
//! two-letter alphabet `{x, y}` under the collapse map [`beta`], which sends
//! every `x_i` to `x` and every `y_j` to `y`.
//!
//! Words are packed: 3 bits per letter in a `u128`, most significant bits
//! first, length in the low byte. Numeric comparison of the letter bits is
//! therefore exactly the letterwise order `x1 < x2 < x3 < y1 < y2 < y3`,
//! and the derived total order on [`Word`] is degree first, then letterwise.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard cap on word length; beyond this the `6^d` combinatorics is out of
/// desk range and callers get a configuration error instead of a stall.
pub const MAX_WORD_LEN: usize = 32;

/// Cap on degrees whose full monomial basis may be enumerated (`6^8` is
/// about 1.7 million words).
pub const MAX_ENUM_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word length {0} exceeds the {MAX_WORD_LEN}-letter cap")]
    TooLong(usize),
    #[error("cannot parse {0:?} as a word")]
    Parse(String),
    #[error("degree {0} exceeds the enumeration cap {MAX_ENUM_DEGREE} (6^{0} monomials)")]
    EnumTooLarge(usize),
}

/// Which third of the alphabet a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenClass {
    X,
    Y,
}

/// One of the six generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u8);

impl Gen {
    pub const X1: Gen = Gen(0);
    pub const X2: Gen = Gen(1);
    pub const X3: Gen = Gen(2);
    pub const Y1: Gen = Gen(3);
    pub const Y2: Gen = Gen(4);
    pub const Y3: Gen = Gen(5);

    pub const ALL: [Gen; 6] = [Gen(0), Gen(1), Gen(2), Gen(3), Gen(4), Gen(5)];

    pub fn new(class: GenClass, index: u8) -> Option<Gen> {
        if (1..=3).contains(&index) {
            Some(match class {
                GenClass::X => Gen(index - 1),
                GenClass::Y => Gen(index + 2),
            })
        } else {
            None
        }
    }

    pub fn from_code(code: u8) -> Option<Gen> {
        (code < 6).then_some(Gen(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn class(self) -> GenClass {
        if self.0 < 3 {
            GenClass::X
        } else {
            GenClass::Y
        }
    }

    /// 1-based index within its class.
    pub fn index(self) -> u8 {
        self.0 % 3 + 1
    }

    pub fn symbol(self) -> &'static str {
        ["x1", "x2", "x3", "y1", "y2", "y3"][self.0 as usize]
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

// Letter bits live in bits 127..32 (3 bits per letter, letter 0 topmost);
// bits 31..8 are zero; the length sits in bits 7..0.
const LETTER_BITS: u128 = !0u128 << 32;

/// A monomial over the six generators. The empty word is the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word(u128);

impl Word {
    pub fn empty() -> Word {
        Word(0)
    }

    pub fn gen(g: Gen) -> Word {
        Word(((g.code() as u128) << 125) | 1)
    }

    pub fn from_gens(letters: &[Gen]) -> Result<Word, WordError> {
        if letters.len() > MAX_WORD_LEN {
            return Err(WordError::TooLong(letters.len()));
        }
        let mut raw: u128 = letters.len() as u128;
        for (i, g) in letters.iter().enumerate() {
            raw |= (g.code() as u128) << (125 - 3 * i);
        }
        Ok(Word(raw))
    }

    pub fn len(&self) -> usize {
        (self.0 & 0xFF) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Degree equals length for monomials.
    pub fn degree(&self) -> usize {
        self.len()
    }

    pub fn letter(&self, i: usize) -> Gen {
        debug_assert!(i < self.len());
        Gen(((self.0 >> (125 - 3 * i)) & 0b111) as u8)
    }

    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        let n = self.len() + other.len();
        if n > MAX_WORD_LEN {
            return Err(WordError::TooLong(n));
        }
        let tail = (other.0 & LETTER_BITS) >> (3 * self.len());
        Ok(Word((self.0 & LETTER_BITS) | tail | n as u128))
    }

    /// The factor starting at `start` with `count` letters.
    pub fn block(&self, start: usize, count: usize) -> Word {
        assert!(start + count <= self.len());
        if count == 0 {
            return Word::empty();
        }
        let shifted = (self.0 & LETTER_BITS) << (3 * start);
        let keep = !0u128 << (128 - 3 * count);
        Word((shifted & keep) | count as u128)
    }

    /// Occurrence counts of the six generators.
    pub fn multidegree(&self) -> MultiDegree {
        let mut n = [0u32; 6];
        for g in self.letters() {
            n[g.code() as usize] += 1;
        }
        MultiDegree(n)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        // Degree first, then letterwise via the packed representation.
        (self.len(), self.0 & LETTER_BITS).cmp(&(other.len(), other.0 & LETTER_BITS))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.letters() {
            f.write_str(g.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses concatenated symbols like `"x1y2x1"`; `""` and `"1"` are the
    /// empty word.
    fn from_str(s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let bad = || WordError::Parse(s.to_string());
        let bytes = s.as_bytes();
        if !bytes.len().is_multiple_of(2) {
            return Err(bad());
        }
        let mut letters = Vec::with_capacity(bytes.len() / 2);
        for pair in bytes.chunks(2) {
            let class = match pair[0] {
                b'x' => GenClass::X,
                b'y' => GenClass::Y,
                _ => return Err(bad()),
            };
            let index = pair[1].wrapping_sub(b'0');
            letters.push(Gen::new(class, index).ok_or_else(bad)?);
        }
        Word::from_gens(&letters)
    }
}

/// All `6^d` monomials of degree `d` in ascending word order.
pub fn enumerate_words(degree: usize) -> Result<Vec<Word>, WordError> {
    if degree > MAX_ENUM_DEGREE {
        return Err(WordError::EnumTooLarge(degree));
    }
    let mut out = Vec::with_capacity(6usize.pow(degree as u32));
    let mut letters = vec![Gen(0); degree];
    loop {
        out.push(Word::from_gens(&letters).expect("degree under cap"));
        // Odometer over generator codes, least significant at the right, so
        // the output comes out sorted.
        let mut i = degree;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if letters[i].0 < 5 {
                letters[i].0 += 1;
                break;
            }
            letters[i].0 = 0;
        }
    }
}

// BinWord bits: one bit per letter (x = 0, y = 1) in bits 63..32, letter 0
// topmost; length in the low byte.
const BIN_LETTER_BITS: u64 = !0u64 << 32;

/// A word over the collapsed alphabet `{x, y}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinWord(u64);

/// A letter of the collapsed alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinLetter {
    X,
    Y,
}

impl BinWord {
    pub fn empty() -> BinWord {
        BinWord(0)
    }

    pub fn from_letters(letters: &[BinLetter]) -> Result<BinWord, WordError> {
        if letters.len() > MAX_WORD_LEN {
            return Err(WordError::TooLong(letters.len()));
        }
        let mut raw: u64 = letters.len() as u64;
        for (i, l) in letters.iter().enumerate() {
            if matches!(l, BinLetter::Y) {
                raw |= 1u64 << (63 - i);
            }
        }
        Ok(BinWord(raw))
    }

    pub fn len(&self) -> usize {
        (self.0 & 0xFF) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> usize {
        self.len()
    }

    pub fn letter(&self, i: usize) -> BinLetter {
        debug_assert!(i < self.len());
        if (self.0 >> (63 - i)) & 1 == 1 {
            BinLetter::Y
        } else {
            BinLetter::X
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = BinLetter> + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn concat(&self, other: &BinWord) -> Result<BinWord, WordError> {
        let n = self.len() + other.len();
        if n > MAX_WORD_LEN {
            return Err(WordError::TooLong(n));
        }
        let tail = (other.0 & BIN_LETTER_BITS) >> self.len();
        Ok(BinWord((self.0 & BIN_LETTER_BITS) | tail | n as u64))
    }

    pub fn block(&self, start: usize, count: usize) -> BinWord {
        assert!(start + count <= self.len());
        if count == 0 {
            return BinWord::empty();
        }
        let shifted = (self.0 & BIN_LETTER_BITS) << start;
        let keep = !0u64 << (64 - count);
        BinWord((shifted & keep) | count as u64)
    }

    /// Number of x letters.
    pub fn deg_x(&self) -> usize {
        self.len() - self.deg_y()
    }

    /// Number of y letters.
    pub fn deg_y(&self) -> usize {
        (self.0 & BIN_LETTER_BITS).count_ones() as usize
    }

    /// The ordering `≺`: defined only between words of the same length,
    /// where it compares index sequences lexicographically (x before y).
    /// Words of different lengths are incomparable (`None`).
    pub fn lex_cmp(&self, other: &BinWord) -> Option<Ordering> {
        if self.len() != other.len() {
            return None;
        }
        Some((self.0 & BIN_LETTER_BITS).cmp(&(other.0 & BIN_LETTER_BITS)))
    }

    /// Strictly `≺`-smaller, same length.
    pub fn lex_lt(&self, other: &BinWord) -> bool {
        self.lex_cmp(other) == Some(Ordering::Less)
    }
}

impl fmt::Display for BinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            f.write_str(match l {
                BinLetter::X => "x",
                BinLetter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for BinWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<BinWord, WordError> {
        let s = s.trim();
        if s == "1" {
            return Ok(BinWord::empty());
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(match c {
                'x' => BinLetter::X,
                'y' => BinLetter::Y,
                _ => return Err(WordError::Parse(s.to_string())),
            });
        }
        BinWord::from_letters(&letters)
    }
}

/// All `2^d` collapsed words of degree `d` in ascending `≺` order.
pub fn enumerate_binwords(degree: usize) -> Result<Vec<BinWord>, WordError> {
    if degree > MAX_WORD_LEN {
        return Err(WordError::TooLong(degree));
    }
    let count = 1u64 << degree;
    Ok((0..count)
        .map(|c| {
            let letters = if degree == 0 { 0 } else { c << (64 - degree) };
            BinWord(letters | degree as u64)
        })
        .collect())
}

/// The collapse map: `x_i -> x`, `y_j -> y`, extended letterwise. It is a
/// monoid homomorphism and preserves length.
pub fn beta(w: &Word) -> BinWord {
    let mut raw: u64 = w.len() as u64;
    for i in 0..w.len() {
        if matches!(w.letter(i).class(), GenClass::Y) {
            raw |= 1u64 << (63 - i);
        }
    }
    BinWord(raw)
}

/// Occurrence-count vector `(n1, ..., n6)` of the six generators. The
/// derived `Ord` is the lexicographic tuple order `≺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub [u32; 6]);

impl MultiDegree {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// x-side total `n1 + n2 + n3`.
    pub fn x_total(&self) -> u32 {
        self.0[..3].iter().sum()
    }

    /// y-side total `n4 + n5 + n6`.
    pub fn y_total(&self) -> u32 {
        self.0[3..].iter().sum()
    }

    /// Entrywise difference; `None` if any coordinate would go negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let mut out = [0u32; 6];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *o = a.checked_sub(*b)?;
        }
        Some(MultiDegree(out))
    }

    /// Does this vector fit the x/y letter counts of `z`?
    pub fn feasible_for(&self, z: &BinWord) -> bool {
        self.x_total() as usize == z.deg_x() && self.y_total() as usize == z.deg_y()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.0[0], self.0[1], self.0[2], self.0[3], self.0[4], self.0[5]
        )
    }
}

/// All splits of `total` into `parts` nonnegative summands, ascending lex.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// The multidegrees compatible with `z` (x-part sums to `deg_x z`, y-part to
/// `deg_y z`), in ascending lexicographic order.
pub fn feasible_multidegrees(z: &BinWord) -> Vec<MultiDegree> {
    let xs = compositions(z.deg_x() as u32, 3);
    let ys = compositions(z.deg_y() as u32, 3);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            out.push(MultiDegree([x[0], x[1], x[2], y[0], y[1], y[2]]));
        }
    }
    out
}
