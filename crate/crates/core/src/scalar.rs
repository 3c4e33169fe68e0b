//! Exact field arithmetic over the rationals and over prime fields.
//!
//! Everything downstream (elimination, projections, certificates) assumes
//! the field axioms hold *exactly*: rationals are arbitrary precision and
//! always reduced, residues always live in `[0, p)`. There is no floating
//! point anywhere in this crate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands come from different fields ({0} vs {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse {0:?} as an element of {1}")]
    Parse(String, FieldSpec),
}

/// The ground field: the rationals, or integers modulo a machine-word prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", try_from = "FieldSpecRepr")]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
}

/// Mirror of [`FieldSpec`] without the primality invariant; deserialization
/// goes through here so a composite modulus is rejected.
#[derive(Deserialize)]
#[serde(tag = "field")]
enum FieldSpecRepr {
    Q,
    Fp { p: u64 },
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = ScalarError;

    fn try_from(repr: FieldSpecRepr) -> Result<Self, ScalarError> {
        match repr {
            FieldSpecRepr::Q => Ok(FieldSpec::Q),
            FieldSpecRepr::Fp { p } => FieldSpec::prime_field(p),
        }
    }
}

impl FieldSpec {
    /// Prime field constructor; rejects composite or trivial moduli.
    pub fn prime_field(p: u64) -> Result<FieldSpec, ScalarError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Fp { p })
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(Box::new(BigRational::zero())),
            FieldSpec::Fp { p } => Scalar::Fp { p: *p, value: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(Box::new(BigRational::one())),
            FieldSpec::Fp { p } => Scalar::Fp {
                p: *p,
                value: 1 % *p,
            },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(n)))),
            FieldSpec::Fp { p } => Scalar::Fp {
                p: *p,
                value: n.rem_euclid(*p as i64) as u64,
            },
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Q => None,
            FieldSpec::Fp { p } => Some(*p),
        }
    }

    /// Parses `"-3/4"`, `"5"` style coefficient strings.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::Parse(text.to_string(), *self);
        let s = text.trim();
        match self {
            FieldSpec::Q => {
                let (num_s, den_s) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = num_s.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den_s.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::Q(Box::new(BigRational::new(num, den))))
            }
            FieldSpec::Fp { p } => {
                let n: i128 = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Fp {
                    p: *p,
                    value: n.rem_euclid(*p as i128) as u64,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp { p } => write!(f, "F{p}"),
        }
    }
}

/// An element of the ground field.
///
/// Rationals are kept reduced with positive denominator (the `Ratio`
/// constructor maintains that), residues are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Q(Box<BigRational>),
    Fp { p: u64, value: u64 },
}

/// Field operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies a single field operation, checking field compatibility.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::MixedFields(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.mul_raw(&other.inverse_raw()))
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(Box::new(-(**r).clone())),
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(self.inverse_raw())
        }
    }

    // Same-field arithmetic used on hot paths where the field equality is
    // structurally guaranteed (e.g. inside a single Poly).
    pub(crate) fn add_raw(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a + &**b)),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => {
                let s = a + b;
                Scalar::Fp {
                    p: *p,
                    value: if s >= *p { s - p } else { s },
                }
            }
            _ => unreachable!("mixed-field scalars inside one container"),
        }
    }

    pub(crate) fn sub_raw(&self, other: &Scalar) -> Scalar {
        self.add_raw(&other.neg())
    }

    pub(crate) fn mul_raw(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a * &**b)),
            (Scalar::Fp { p, value: a }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                p: *p,
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!("mixed-field scalars inside one container"),
        }
    }

    fn inverse_raw(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(Box::new((**r).recip())),
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: pow_mod(*value, p - 2, *p),
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set below decides primality for
/// every u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A finite prefix of a field enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarEnumeration {
    pub values: Vec<Scalar>,
    /// Set when the requested count exceeds the field size.
    pub exhausted: bool,
}

/// Deterministic injective enumeration of the field.
///
/// Prime fields list `0, 1, ..., p-1` once; asking for more sets the
/// exhaustion flag instead of cycling. Rationals are listed by height
/// `|num| + den` of the reduced fraction; inside one height class the
/// nonnegative numerators come first in ascending order, then the negative
/// ones by ascending magnitude. The first few rationals are
/// `0, 1, -1, 1/2, 2, -1/2, -2, 1/3, 3, ...`.
pub fn enumerate_scalars(spec: FieldSpec, count: usize) -> ScalarEnumeration {
    match spec {
        FieldSpec::Fp { p } => {
            let take = count.min(p as usize);
            let values = (0..take as u64)
                .map(|v| Scalar::Fp { p, value: v })
                .collect();
            ScalarEnumeration {
                values,
                exhausted: count > p as usize,
            }
        }
        FieldSpec::Q => {
            let mut values = Vec::with_capacity(count);
            let mut height: u64 = 1;
            'outer: loop {
                for rational in height_class(height) {
                    if values.len() == count {
                        break 'outer;
                    }
                    values.push(Scalar::Q(Box::new(rational)));
                }
                height += 1;
            }
            ScalarEnumeration {
                values,
                exhausted: false,
            }
        }
    }
}

/// All reduced rationals with `|num| + den == height`, in enumeration order.
fn height_class(height: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if height == 1 {
        out.push(BigRational::zero());
        return out;
    }
    for negative in [false, true] {
        for a in 1..height {
            let b = height - a;
            if gcd_u64(a, b) == 1 {
                let num = if negative { -(a as i64) } else { a as i64 };
                out.push(BigRational::new(BigInt::from(num), BigInt::from(b)));
            }
        }
    }
    out
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    #[test]
    fn rational_add() {
        // 1/2 + 1/3 = 5/6
        let r = scalar_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap();
        assert_eq!(r, q(5, 6));
    }

    #[test]
    fn modular_mul() {
        // 3 * 4 = 2 mod 5
        let f5 = FieldSpec::prime_field(5).unwrap();
        let r = scalar_arith(&f5.from_i64(3), &f5.from_i64(4), ArithOp::Mul).unwrap();
        assert_eq!(r, f5.from_i64(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = q(3, 1);
        assert_eq!(
            scalar_arith(&a, &q(0, 1), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(
            scalar_arith(&f5.from_i64(1), &f5.from_i64(0), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn mixed_fields_are_an_error() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        let err = scalar_arith(&q(1, 1), &f5.from_i64(1), ArithOp::Add).unwrap_err();
        assert!(matches!(err, ScalarError::MixedFields(..)));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(FieldSpec::prime_field(6), Err(ScalarError::NotPrime(6)));
        assert_eq!(FieldSpec::prime_field(1), Err(ScalarError::NotPrime(1)));
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(1_000_000_007).is_ok());
    }

    #[test]
    fn rational_enumeration_prefix() {
        // Height order, checked by hand: 0 | 1, -1 | 1/2, 2, -1/2, -2 | ...
        let e = enumerate_scalars(FieldSpec::Q, 7);
        assert!(!e.exhausted);
        let expect = [
            q(0, 1),
            q(1, 1),
            q(-1, 1),
            q(1, 2),
            q(2, 1),
            q(-1, 2),
            q(-2, 1),
        ];
        assert_eq!(e.values, expect);
    }

    #[test]
    fn rational_enumeration_matches_bruteforce_sort() {
        // Independent oracle: collect every reduced fraction of height <= 8
        // by scanning a box, sort by the documented key, compare.
        let mut all: Vec<(u64, u8, u64, BigRational)> = Vec::new();
        for num in -8i64..=8 {
            for den in 1i64..=8 {
                if gcd_u64(num.unsigned_abs(), den as u64) == 1 || num == 0 {
                    let r = BigRational::new(BigInt::from(num), BigInt::from(den));
                    if num == 0 && den != 1 {
                        continue;
                    }
                    let h = num.unsigned_abs() + den as u64;
                    if h <= 8 {
                        all.push((h, u8::from(num < 0), num.unsigned_abs(), r));
                    }
                }
            }
        }
        all.sort_by_key(|a| (a.0, a.1, a.2));
        let expect: Vec<Scalar> = all.into_iter().map(|t| Scalar::Q(Box::new(t.3))).collect();
        let got = enumerate_scalars(FieldSpec::Q, expect.len());
        assert_eq!(got.values, expect);
    }

    #[test]
    fn f2_enumeration_is_whole_field() {
        let f2 = FieldSpec::prime_field(2).unwrap();
        let e = enumerate_scalars(f2, 2);
        assert!(!e.exhausted);
        assert_eq!(e.values, vec![f2.from_i64(0), f2.from_i64(1)]);
    }

    #[test]
    fn f3_enumeration_exhausts() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let e = enumerate_scalars(f3, 5);
        assert!(e.exhausted);
        assert_eq!(e.values.len(), 3);
        assert_eq!(
            e.values,
            vec![f3.from_i64(0), f3.from_i64(1), f3.from_i64(2)]
        );
    }

    #[test]
    fn enumeration_is_injective_and_stable() {
        let e1 = enumerate_scalars(FieldSpec::Q, 200);
        let e2 = enumerate_scalars(FieldSpec::Q, 200);
        assert_eq!(e1.values, e2.values);
        for i in 0..e1.values.len() {
            for j in 0..i {
                assert_ne!(e1.values[i], e1.values[j]);
            }
        }
    }

    #[test]
    fn field_spec_json_round_trip() {
        let q: FieldSpec = serde_json::from_str(r#"{"field":"Q"}"#).unwrap();
        assert_eq!(q, FieldSpec::Q);
        let f5: FieldSpec = serde_json::from_str(r#"{"field":"Fp","p":5}"#).unwrap();
        assert_eq!(f5, FieldSpec::Fp { p: 5 });
        assert!(serde_json::from_str::<FieldSpec>(r#"{"field":"Fp","p":6}"#).is_err());
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"field":"Q"}"#);
        assert_eq!(
            serde_json::to_string(&f5).unwrap(),
            r#"{"field":"Fp","p":5}"#
        );
    }

    #[test]
    fn parse_scalar_strings() {
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.parse_scalar("7").unwrap(), f5.from_i64(2));
        assert_eq!(f5.parse_scalar("-1").unwrap(), f5.from_i64(4));
        assert_eq!(FieldSpec::Q.parse_scalar("-3/6").unwrap(), q(-1, 2));
        assert!(FieldSpec::Q.parse_scalar("1/0").is_err());
        assert!(f5.parse_scalar("x").is_err());
    }
}
