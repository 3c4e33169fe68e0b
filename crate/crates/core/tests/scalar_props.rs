//! Field axioms hold exactly for both scalar backends, and the field
//! enumerations are fixed injective orders.

use proptest::prelude::*;

use nilfree_core::{enumerate_scalars, FieldSpec, Scalar};

const F5: FieldSpec = FieldSpec::Fp { p: 5 };
const F2: FieldSpec = FieldSpec::Fp { p: 2 };

fn arb_rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| {
        FieldSpec::Q
            .parse_scalar(&format!("{n}/{d}"))
            .expect("valid rational")
    })
}

fn arb_residue(field: FieldSpec) -> impl Strategy<Value = Scalar> {
    (0i64..40).prop_map(move |v| field.from_i64(v))
}

macro_rules! field_axioms {
    ($modname:ident, $arb:expr) => {
        mod $modname {
            use super::*;
            use nilfree_core::{scalar_arith, ArithOp};

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(1000))]

                #[test]
                fn add_is_associative_and_commutative(a in $arb, b in $arb, c in $arb) {
                    let ab_c = scalar_arith(&scalar_arith(&a, &b, ArithOp::Add)?, &c, ArithOp::Add)?;
                    let a_bc = scalar_arith(&a, &scalar_arith(&b, &c, ArithOp::Add)?, ArithOp::Add)?;
                    prop_assert_eq!(ab_c, a_bc);
                    prop_assert_eq!(
                        scalar_arith(&a, &b, ArithOp::Add)?,
                        scalar_arith(&b, &a, ArithOp::Add)?
                    );
                }

                #[test]
                fn mul_is_associative_and_commutative(a in $arb, b in $arb, c in $arb) {
                    let ab_c = scalar_arith(&scalar_arith(&a, &b, ArithOp::Mul)?, &c, ArithOp::Mul)?;
                    let a_bc = scalar_arith(&a, &scalar_arith(&b, &c, ArithOp::Mul)?, ArithOp::Mul)?;
                    prop_assert_eq!(ab_c, a_bc);
                    prop_assert_eq!(
                        scalar_arith(&a, &b, ArithOp::Mul)?,
                        scalar_arith(&b, &a, ArithOp::Mul)?
                    );
                }

                #[test]
                fn mul_distributes_over_add(a in $arb, b in $arb, c in $arb) {
                    let left = scalar_arith(&a, &scalar_arith(&b, &c, ArithOp::Add)?, ArithOp::Mul)?;
                    let right = scalar_arith(
                        &scalar_arith(&a, &b, ArithOp::Mul)?,
                        &scalar_arith(&a, &c, ArithOp::Mul)?,
                        ArithOp::Add,
                    )?;
                    prop_assert_eq!(left, right);
                }

                #[test]
                fn division_inverts_multiplication(a in $arb, b in $arb) {
                    prop_assume!(!b.is_zero());
                    let q = scalar_arith(&a, &b, ArithOp::Div)?;
                    prop_assert_eq!(scalar_arith(&q, &b, ArithOp::Mul)?, a);
                }

                #[test]
                fn sub_then_add_round_trips(a in $arb, b in $arb) {
                    let d = scalar_arith(&a, &b, ArithOp::Sub)?;
                    prop_assert_eq!(scalar_arith(&d, &b, ArithOp::Add)?, a);
                }
            }
        }
    };
}

field_axioms!(rational_axioms, arb_rational());
field_axioms!(f5_axioms, arb_residue(F5));

#[test]
fn enumerations_are_fixed_injective_orders() {
    for field in [FieldSpec::Q, F5, F2] {
        let a = enumerate_scalars(field, 150);
        let b = enumerate_scalars(field, 150);
        assert_eq!(a.values, b.values, "{field} enumeration must be stable");
        let mut seen = Vec::new();
        for v in &a.values {
            assert!(!seen.contains(v), "{field} enumeration repeats {v}");
            seen.push(v.clone());
        }
    }
}

#[test]
fn prefix_of_longer_enumeration_matches() {
    let short = enumerate_scalars(FieldSpec::Q, 40);
    let long = enumerate_scalars(FieldSpec::Q, 200);
    assert_eq!(short.values[..], long.values[..40]);
}
