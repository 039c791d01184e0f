//! Algebraic laws of the arithmetic kernel on small random inputs.

use proptest::prelude::*;
use qwhit::arith::{
    ratfn_reduce, rat, residue_at, residue_at_infinity, series_mul_inv, QRatFn, RatT, TSeries, UniPoly, ZLaurent,
};

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| UniPoly::from_ints(&c))
}

fn nonzero_poly() -> impl Strategy<Value = UniPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfn() -> impl Strategy<Value = QRatFn> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| ratfn_reduce(n, d).unwrap())
}

fn laurent(nvars: usize) -> impl Strategy<Value = ZLaurent> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, nvars), ratfn()), 0..4)
        .prop_map(move |terms| ZLaurent::from_terms(nvars, terms))
}

/// Distinct small nonzero integers as pole coefficients `c` in `1 − ct`.
fn distinct_factors() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set((-6i64..=6).prop_filter("nonzero", |c| *c != 0), 1..4)
        .prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfn_ring_axioms(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn ratfn_reduce_is_canonical(n in poly(), d in nonzero_poly(), k in nonzero_poly(), s in -5i64..=5) {
        prop_assume!(s != 0);
        let r = ratfn_reduce(n.clone(), d.clone()).unwrap();
        // same function, different presentation
        let scaled = ratfn_reduce((&n * &k).scale(&rat(s)), (&d * &k).scale(&rat(s))).unwrap();
        prop_assert_eq!(&r, &scaled);
        let again = ratfn_reduce(r.num().clone(), r.den().clone()).unwrap();
        prop_assert_eq!(&r, &again);
        prop_assert!(r.den().leading().unwrap() == &rat(1));
        prop_assert!(r.num().gcd(r.den()).is_one() || r.num().is_zero());
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(2), b in laurent(2), c in laurent(2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn series_inverse(coeffs in prop::collection::vec(laurent(2), 1..4), unit in ratfn(), order in 0usize..4) {
        prop_assume!(!unit.is_zero());
        let mut c = coeffs;
        c[0] = ZLaurent::monomial(vec![1, -1], unit);
        c.resize(order + 1, ZLaurent::zero(2));
        let f = TSeries::from_coeffs(c);
        let g = series_mul_inv(&f, order).unwrap();
        let one = TSeries::constant(ZLaurent::one(2), order);
        prop_assert_eq!(f.mul(&g), one);
    }

    #[test]
    fn residue_theorem(cs in distinct_factors(), t_power in 0usize..2, num in prop::collection::vec(-3i64..=3, 1..5)) {
        let num: Vec<QRatFn> = num.into_iter().map(QRatFn::from_int).collect();
        let f = RatT::new(num, t_power, cs.iter().map(|&c| QRatFn::from_int(c)).collect());
        let mut total = residue_at_infinity(&f).unwrap();
        if t_power > 0 {
            total = &total + &residue_at(&f, &QRatFn::zero()).unwrap();
        }
        for &c in &cs {
            total = &total + &residue_at(&f, &QRatFn::from_rat(rat(c).recip())).unwrap();
        }
        prop_assert!(total.is_zero());
    }

    #[test]
    fn repeated_pole_rejected(cs in distinct_factors(), t_power in 2usize..4) {
        let mut factors: Vec<QRatFn> = cs.iter().map(|&c| QRatFn::from_int(c)).collect();
        prop_assert!(residue_at(&RatT::reciprocal(t_power, factors.clone()), &QRatFn::zero()).is_err());
        factors.push(factors[0].clone());
        let pole = factors[0].inv().unwrap();
        prop_assert!(residue_at(&RatT::reciprocal(0, factors), &pole).is_err());
    }

    #[test]
    fn json_round_trip(a in laurent(3), r in ratfn()) {
        let v = serde_json::to_value(&a).unwrap();
        prop_assert_eq!(ZLaurent::from_json(&v, 3).unwrap(), a);
        let v = serde_json::to_value(&r).unwrap();
        let back: QRatFn = serde_json::from_value(v).unwrap();
        prop_assert_eq!(back, r);
    }
}
