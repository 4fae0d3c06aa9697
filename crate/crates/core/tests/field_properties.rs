use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use pentaflow::golden_field::{GoldenMatrix, GoldenNumber, GoldenVector};

fn small() -> impl Strategy<Value = i64> {
    -50i64..=50
}

fn golden() -> impl Strategy<Value = GoldenNumber> {
    (small(), 1i64..=12, small(), 1i64..=12)
        .prop_map(|(an, ad, bn, bd)| GoldenNumber::from_fractions(an, ad, bn, bd))
}

fn nonzero_golden() -> impl Strategy<Value = GoldenNumber> {
    golden().prop_filter("nonzero", |x| !x.is_zero())
}

/// Decides the sign of `p + q·√5` from a 50-digit decimal expansion of √5,
/// or `None` when the truncation could hide it.
fn decimal_sign(p: &BigInt, q: &BigInt) -> Option<i8> {
    let scale = BigInt::from(10u32).pow(50);
    let sqrt5 = (BigInt::from(5u32) * &scale * &scale).sqrt();
    let x = p * &scale + q * &sqrt5;
    // The truncation error of q·sqrt5 is below |q|, and sqrt5 underestimates.
    if x.abs() <= q.abs() {
        return if q.is_zero() { Some(0) } else { None };
    }
    Some(if x.is_positive() { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sign_matches_decimal_oracle(an in -10_000i64..=10_000, ad in 1i64..=1_000,
                                   bn in -10_000i64..=10_000, bd in 1i64..=1_000) {
        let x = GoldenNumber::from_fractions(an, ad, bn, bd);
        // a + bφ = ((2a + b) + b√5) / 2; clear the positive denominators.
        let p = BigInt::from(2 * an * bd + bn * ad);
        let q = BigInt::from(bn * ad);
        if let Some(s) = decimal_sign(&p, &q) {
            prop_assert_eq!(x.sign(), s);
        }
    }
}

proptest! {
    #[test]
    fn ring_axioms(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, GoldenNumber::zero());
    }

    #[test]
    fn inverse_and_norm(x in nonzero_golden(), y in nonzero_golden()) {
        let inv = x.inverse().unwrap();
        prop_assert_eq!(&x * &inv, GoldenNumber::one());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conjugate(), x.conjugate() * y.conjugate());
        prop_assert_eq!(x.checked_div(&y).unwrap() * &y, x);
    }

    #[test]
    fn order_is_compatible(x in golden(), y in golden(), z in golden()) {
        if x < y {
            prop_assert!(&x + &z < &y + &z);
            prop_assert!(x.to_f64() < y.to_f64() + 1e-9);
        }
        if z.is_positive() && x <= y {
            prop_assert!(&x * &z <= &y * &z);
        }
        prop_assert!(!x.abs().is_negative());
        prop_assert_eq!(x.sign(), -(-&x).sign());
    }

    #[test]
    fn text_and_json_round_trip(x in golden()) {
        let back: GoldenNumber = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, &x);
        let json = serde_json::to_string(&x).unwrap();
        let back: GoldenNumber = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn matrix_inverse(a in golden(), b in golden(), c in golden(), d in golden(),
                      vx in golden(), vy in golden()) {
        let m = GoldenMatrix::new(a, b, c, d);
        let v = GoldenVector::new(vx, vy);
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(inv.mul(&m), GoldenMatrix::identity());
                prop_assert_eq!(inv.apply(&m.apply(&v)), v);
            }
            Err(_) => prop_assert!(m.det().is_zero()),
        }
    }
}

#[test]
fn decimal_oracle_flags_phi_identity() {
    // φ² − φ − 1 = 0 is exact and must not be rounded to a sign.
    let phi = GoldenNumber::phi();
    let x = &phi * &phi - &phi - GoldenNumber::one();
    assert_eq!(x.sign(), 0);
    assert_eq!(decimal_sign(&BigInt::from(0), &BigInt::from(0)), Some(0));
    // 2 − √5 < 0 even though the numbers are close.
    assert_eq!(decimal_sign(&BigInt::from(2), &BigInt::from(-1)), Some(-1));
    assert_eq!(decimal_sign(&BigInt::from(-2), &BigInt::from(1)), Some(1));
}
