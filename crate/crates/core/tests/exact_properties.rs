use std::collections::BTreeMap;

use bochner_lab::exactnum::{gcd, ratfn_reduce, univariate_gcd, MPoly, RatFn, Rational};
use proptest::prelude::*;

const VARS: [&str; 3] = ["n", "a", "b"];

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn arb_poly(max_terms: usize) -> impl Strategy<Value = MPoly> {
    let term = (0u32..3, 0u32..3, 0u32..2, -12i64..12, 1i64..5);
    prop::collection::vec(term, 0..max_terms).prop_map(|ts| {
        ts.into_iter().fold(MPoly::zero(), |acc, (i, j, k, p, d)| {
            let m = MPoly::var(VARS[0]).pow(i) * MPoly::var(VARS[1]).pow(j) * MPoly::var(VARS[2]).pow(k);
            acc + m.scale(&q(p, d))
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    arb_poly(4).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b * a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() * MPoly::one(), a);
    }

    #[test]
    fn shift_is_a_ring_homomorphism(a in arb_poly(5), b in arb_poly(5), k in -5i64..5, l in -5i64..5) {
        prop_assert_eq!((a.clone() * b.clone()).shift_n(k), a.shift_n(k) * b.shift_n(k));
        prop_assert_eq!((a.clone() + b.clone()).shift_n(k), a.shift_n(k) + b.shift_n(k));
        prop_assert_eq!(a.shift_n(k).shift_n(l), a.shift_n(k + l));
    }

    #[test]
    fn reduction_cancels_common_factors(p in arb_poly(5), d in nonzero_poly(), g in nonzero_poly()) {
        let r = ratfn_reduce(&(p.clone() * g.clone()), &(d.clone() * g.clone())).unwrap();
        let s = ratfn_reduce(&p, &d).unwrap();
        prop_assert_eq!(&r, &s);
        // cross-multiplication agrees with the unreduced fraction
        prop_assert_eq!(r.numerator().clone() * d, p * r.denominator());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), g in nonzero_poly()) {
        let x = a * g.clone();
        let y = b * g.clone();
        let h = gcd(&x, &y);
        prop_assert!(x.exact_div(&h).is_some());
        prop_assert!(y.exact_div(&h).is_some());
        prop_assert!(h.exact_div(&g).is_some());
    }

    #[test]
    fn specialization_commutes_with_arithmetic(
        a in arb_poly(4), b in arb_poly(4), d in nonzero_poly(), v in -6i64..6, w in 1i64..4
    ) {
        let val = q(v, w);
        prop_assert_eq!((a.clone() * b.clone()).specialize("a", &val), a.specialize("a", &val) * b.specialize("a", &val));
        let f = RatFn::from_poly(a.clone()).checked_div(&RatFn::from_poly(d.clone())).unwrap();
        let ds = d.specialize("a", &val);
        if !ds.is_zero() {
            let lhs = f.specialize("a", &val).unwrap();
            let rhs = ratfn_reduce(&a.specialize("a", &val), &ds).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        let bind: BTreeMap<String, Rational> = [("a".to_string(), val.clone()), ("b".to_string(), q(1, 2))].into();
        prop_assert_eq!(a.evaluate(&bind), a.specialize("a", &val).specialize("b", &q(1, 2)));
    }

    #[test]
    fn univariate_gcd_matches_after_specialization(
        a in nonzero_poly(), g in nonzero_poly(), va in -3i64..3, vb in -3i64..3
    ) {
        let fix = |p: &MPoly| p.specialize("a", &q(va, 1)).specialize("b", &q(vb, 1));
        let (x, y) = (fix(&(a.clone() * g.clone())), fix(&g));
        if !x.is_zero() && !y.is_zero() {
            let u = univariate_gcd(&x, &y);
            prop_assert!(x.exact_div(&u).is_some() && y.exact_div(&u).is_some());
            prop_assert!(u.exact_div(&y).is_some());
        }
    }
}
