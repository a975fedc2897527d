use proptest::prelude::*;

use qtrin_core::qbinom::qbin;
use qtrin_core::qcore::{dual, euler_product, truncate, FactoredRatio, QPoly, QSeries, Sign, UNIT};
use qtrin_core::qtrinom::{t_n, t_n_via_dual, trinomial};

/// Sparse Laurent polynomials with quarter exponents in `[-40, 40]`.
fn laurent() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-40i64..=40, -9i64..=9), 0..8).prop_map(|ts| ts.into_iter().map(|(e, c)| QPoly::term(c, e)).sum())
}

/// Polynomials with non-negative exponents.
fn ordinary() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0i64..=48, -9i64..=9), 0..8).prop_map(|ts| ts.into_iter().map(|(e, c)| QPoly::term(c, e)).sum())
}

/// A ratio whose denominator is a few `(1 - sign q^e)` factors.
fn ratio() -> impl Strategy<Value = FactoredRatio> {
    (ordinary(), prop::collection::vec((prop::bool::ANY, 1i64..=12), 0..4)).prop_map(|(num, fs)| {
        FactoredRatio::new(num, fs.into_iter().map(|(s, e)| (if s { 1 } else { -1 }, e))).unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &QPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form(a in laurent()) {
        prop_assert!(a.terms().all(|(_, c)| c != &num_bigint::BigInt::from(0)));
    }

    #[test]
    fn dual_is_an_involutive_automorphism(a in laurent(), b in laurent()) {
        prop_assert_eq!(dual(&dual(&a)), a.clone());
        prop_assert_eq!(dual(&(&a * &b)), &dual(&a) * &dual(&b));
        prop_assert_eq!(dual(&(&a + &b)), &dual(&a) + &dual(&b));
    }

    #[test]
    fn truncation_commutes_with_products(a in ordinary(), b in ordinary(), n in 0i64..=60) {
        let whole = truncate(&(&a * &b), n);
        let parts = truncate(&a, n).mul(&truncate(&b, n));
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn euler_products_are_inverse(sign in prop::bool::ANY, start in 1i64..=8, step in 1i64..=8, order in 0i64..=60) {
        let s = if sign { Sign::Plus } else { Sign::Minus };
        let p = euler_product(s, start, step, 1, order).unwrap();
        let m = euler_product(s, start, step, -1, order).unwrap();
        prop_assert_eq!(p.mul(&m), QSeries::one(order));
    }

    #[test]
    fn ratio_equal_is_an_equivalence(r in ratio(), extra in prop::collection::vec((prop::bool::ANY, 1i64..=12), 0..3), s in ratio()) {
        // r multiplied above and below by the same factors is still r
        let mut t = r.clone();
        for (sg, e) in &extra {
            let sg = if *sg { 1 } else { -1 };
            t = t.mul_poly(&QPoly::binomial_factor(sg, *e)).div_factor(sg, *e).unwrap();
        }
        prop_assert!(r.ratio_equal(&r));
        prop_assert!(r.ratio_equal(&t) && t.ratio_equal(&r));
        // transitivity through t
        prop_assert_eq!(r.ratio_equal(&s), t.ratio_equal(&s));
    }

    #[test]
    fn binomial_symmetry_and_duality(n in 0i64..=24, a in 0i64..=24) {
        let a = a.min(n);
        prop_assert_eq!(qbin(n, a), qbin(n, n - a));
        prop_assert_eq!(dual(&qbin(n, a)), qbin(n, a).shifted(-UNIT * a * (n - a)));
    }

    #[test]
    fn trinomial_symmetries(l in 0i64..=12, a in -14i64..=14, b in -4i64..=4, n in 0i64..=1) {
        prop_assert_eq!(t_n(n, l, a), t_n(n, l, -a));
        prop_assert_eq!(t_n(n, l, a), t_n_via_dual(n, l, a));
        prop_assert_eq!(trinomial(l, b, a), trinomial(l, b - 2 * a, -a).shifted(UNIT * a * (a - b)));
        if a.abs() > l {
            prop_assert!(trinomial(l, b, a).is_zero() && t_n(n, l, a).is_zero());
        }
    }
}
