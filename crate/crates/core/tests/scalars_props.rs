//! Property tests for the exact rational-function scalars: field laws,
//! canonical-form invariants, display round-trips, and evaluation
//! compatibility.

use proptest::prelude::*;

use hecke_core::scalars::{parse_rational, Polynomial, Rational, RationalFunction};

fn poly(coeffs: Vec<i64>) -> Polynomial {
    Polynomial::new(coeffs.into_iter().map(Into::into).collect())
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-9i64..=9, 0..4).prop_map(poly)
}

fn arb_nonzero_poly() -> impl Strategy<Value = Polynomial> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_rf() -> impl Strategy<Value = RationalFunction> {
    (arb_poly(), arb_nonzero_poly())
        .prop_map(|(n, d)| RationalFunction::from_polys(n, d).expect("nonzero denominator"))
}

fn rat(s: &str) -> Rational {
    parse_rational(s).expect("valid rational literal")
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_rf(), b in arb_rf()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn addition_associates(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes_and_associates(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_rf(), b in arb_rf()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn division_inverts_multiplication(a in arb_rf(), b in arb_rf()) {
        prop_assume!(!b.is_zero());
        let q = (&a * &b).checked_div(&b).expect("nonzero divisor");
        prop_assert_eq!(q, a);
    }

    #[test]
    fn canonical_form_is_unique(a in arb_rf(), c in arb_nonzero_poly()) {
        // Scaling numerator and denominator by a common factor must land on
        // the identical canonical representative.
        let scaled = RationalFunction::from_polys(
            a.numerator() * &c,
            a.denominator() * &c,
        ).expect("nonzero denominator");
        prop_assert_eq!(&scaled, &a);
        prop_assert_eq!(scaled.numerator(), a.numerator());
        prop_assert_eq!(scaled.denominator(), a.denominator());
        // Canonical invariant: the denominator has a positive leading
        // coefficient (checked via the rendered sign of a known-positive
        // value times it; directly: re-normalizing is the identity).
        let renorm = RationalFunction::from_polys(
            a.numerator().clone(),
            a.denominator().clone(),
        ).expect("nonzero denominator");
        prop_assert_eq!(renorm, a);
    }

    #[test]
    fn display_round_trips(a in arb_rf()) {
        let text = a.to_string();
        let back: RationalFunction = text.parse().expect("display output must parse");
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_rf(), b in arb_rf(), n in -5i64..=5) {
        let x = rat(&n.to_string());
        let (Ok(ax), Ok(bx)) = (a.specialize(&x), b.specialize(&x)) else {
            // A pole of either canonical form: nothing to compare.
            return Ok(());
        };
        let sum = (&a + &b).specialize(&x).expect("no new poles appear in a sum");
        let prod = (&a * &b).specialize(&x).expect("no new poles appear in a product");
        prop_assert_eq!(sum, ax.clone() + bx.clone());
        prop_assert_eq!(prod, ax * bx);
    }

    #[test]
    fn powers_match_repeated_multiplication(a in arb_rf(), k in 0u32..=4) {
        let by_pow = a.pow(k as i64).expect("nonnegative exponent");
        let mut by_mul = RationalFunction::one();
        for _ in 0..k {
            by_mul = &by_mul * &a;
        }
        prop_assert_eq!(by_pow, by_mul);
    }
}

#[test]
fn specialization_reports_poles() {
    let one_over_r_minus_1 = RationalFunction::one()
        .checked_div(&"r - 1".parse::<RationalFunction>().unwrap())
        .unwrap();
    assert!(one_over_r_minus_1.specialize(&rat("1")).is_err());
    assert_eq!(
        one_over_r_minus_1.specialize(&rat("3")).unwrap(),
        rat("1/2")
    );
}
