//! Invariants of the Whittaker-function identities on random parameters.

use proptest::prelude::*;
use qwhit::arith::{rat, BigRat, FormalSeries, QRatFn};
use qwhit::characters::{
    character_a, character_bruteforce, stabilizes, symmetric_power_character, DEFAULT_BUDGET,
};
use qwhit::genus::{group_law, rrh_projective, series_reversion};
use qwhit::gz::{gz_count, total_degree, whittaker_eval, whittaker_recursive, LatticePoint};
use qwhit::localization::{full_contour_value, localization_sum, ZAssignment};
use qwhit::specialized::{
    difference_equation_holds, specialized_eval, specialized_via_series, SpecPoint,
};
use qwhit::toda::{hamiltonian_apply, HamiltonianSpec, LatticeFn};

fn top(max_len: usize) -> impl Strategy<Value = LatticePoint> {
    (1..=max_len).prop_flat_map(|n| prop::collection::vec(-1i64..=3, n).prop_map(LatticePoint::new))
}

fn dominant_top(max_len: usize) -> impl Strategy<Value = LatticePoint> {
    top(max_len).prop_map(|mut p| {
        p.0.sort_unstable_by(|a, b| b.cmp(a));
        p
    })
}

/// A permutation of `0..n` as a strategy.
fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn random_log() -> impl Strategy<Value = FormalSeries> {
    (
        (-5i64..=5).prop_filter("unit", |a| *a != 0),
        prop::collection::vec((-5i64..=5, 1i64..=4), 5),
    )
        .prop_map(|(a1, rest)| {
            let mut c = vec![rat(0), rat(a1)];
            c.extend(rest.into_iter().map(|(n, d)| BigRat::new(n.into(), d.into())));
            FormalSeries::from_coeffs(c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn whittaker_degree_and_vanishing(p in top(4)) {
        let v = whittaker_eval(&p);
        if p.is_dominant() {
            prop_assert!(!v.is_zero());
            prop_assert_eq!(total_degree(&v), Some(p.sum()));
        } else {
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn recursion_matches_pattern_sum(p in top(4)) {
        prop_assert_eq!(whittaker_recursive(&p), whittaker_eval(&p));
    }

    #[test]
    fn whittaker_symmetric_in_z(p in dominant_top(3).prop_filter("rank", |p| p.len() == 3), perm in permutation(3)) {
        let v = whittaker_eval(&p);
        prop_assert_eq!(v.permute(&perm), v);
    }

    #[test]
    fn gl2_pattern_count(n in 0i64..30) {
        prop_assert_eq!(gz_count(&LatticePoint::new(vec![n, 0])), n as usize + 1);
    }

    #[test]
    fn eigen_equation_anywhere(p in top(4).prop_filter("rank", |p| p.len() >= 2), r_seed in 0usize..8) {
        let ell = p.len() - 1;
        let r = 1 + r_seed % (ell + 1);
        let spec = HamiltonianSpec::new(ell, r).unwrap();
        let psi = LatticeFn::whittaker(ell);
        let lhs = hamiltonian_apply(&spec, &psi, &p).unwrap();
        let er = qwhit::toda::elementary_symmetric(r, ell).unwrap();
        prop_assert_eq!(lhs, &er * &psi.eval(&p));
    }

    #[test]
    fn hamiltonian_is_linear(p in top(3).prop_filter("rank", |p| p.len() >= 2), a in -3i64..=3, b in -3i64..=3, at in top(3)) {
        let ell = p.len() - 1;
        let n = ell + 1;
        let mut at = at.0;
        at.resize(n, 0);
        let at = LatticePoint::new(at);
        let spec = HamiltonianSpec::new(ell, 1).unwrap();
        let f = LatticeFn::whittaker(ell);
        let g = LatticeFn::indicator(at);
        let (ca, cb) = (QRatFn::from_int(a), QRatFn::from_int(b));
        let (f2, g2, ca2, cb2) = (f.clone(), g.clone(), ca.clone(), cb.clone());
        let comb = LatticeFn::new(n, move |x| &f2.eval(x).scale(&ca2) + &g2.eval(x).scale(&cb2));
        let lhs = hamiltonian_apply(&spec, &comb, &p).unwrap();
        let rhs = &hamiltonian_apply(&spec, &f, &p).unwrap().scale(&ca)
            + &hamiltonian_apply(&spec, &g, &p).unwrap().scale(&cb);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialized_symmetric(n in 0i64..5, k in -1i64..=2, perm in permutation(4)) {
        let v = specialized_eval(&SpecPoint::new(n, k, 3).unwrap());
        prop_assert_eq!(v.permute(&perm), v);
    }

    #[test]
    fn difference_equation(n in -2i64..=6, k in -1i64..=2, ell in 1usize..=3) {
        prop_assert!(difference_equation_holds(&SpecPoint::new(n, k, ell).unwrap()));
    }

    #[test]
    fn series_agrees_with_closed_form(n in 0i64..4, k in 0i64..2, ell in 1usize..=2, q_order in 0usize..5) {
        let p = SpecPoint::new(n, k, ell).unwrap();
        prop_assert!(specialized_via_series(&p, q_order).unwrap().agrees_with(&specialized_eval(&p)).unwrap());
    }

    #[test]
    fn character_invariants(n in 0i64..4, k in 0i64..2, ell in 1usize..=2, d in 0usize..3, perm_seed in 0usize..6) {
        let a = character_a(n, k, ell, d);
        prop_assert_eq!(a.value.homogeneous_degree(), Some(n + k * (ell as i64 + 1)));
        prop_assert_eq!(a.value.at_q_zero().unwrap(), symmetric_power_character(n, k, ell));
        prop_assert!(stabilizes(n, k, ell, d).unwrap());
        let mut perm: Vec<usize> = (0..=ell).collect();
        perm.rotate_left(perm_seed % (ell + 1));
        prop_assert_eq!(a.value.permute(&perm), a.value.clone());
        let b = character_bruteforce(n, k, ell, d, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(b.character, a);
    }

    #[test]
    fn localization_identity(seed in any::<u64>(), n in 0i64..4, k in 0i64..2, d in 0usize..3) {
        let za = ZAssignment::random(2, seed);
        prop_assert_eq!(
            localization_sum(n, k, 1, d, &za).unwrap(),
            full_contour_value(n, k, 1, d, &za).unwrap()
        );
    }

    #[test]
    fn reversion_round_trip(log in random_log()) {
        let e = series_reversion(&log, 6).unwrap();
        let id = FormalSeries::linear(rat(0), rat(1), 6);
        prop_assert_eq!(log.compose(&e).unwrap(), id.clone());
        prop_assert_eq!(e.compose(&log).unwrap(), id);
        prop_assert_eq!(series_reversion(&e, 6).unwrap(), log);
    }

    #[test]
    fn group_law_commutative(log in random_log()) {
        let f = group_law(&log, 5).unwrap();
        prop_assert_eq!(f.swapped(), f.clone());
        // f(z, 0) = z
        for i in 0..=5 {
            let expect = if i == 1 { rat(1) } else { rat(0) };
            prop_assert_eq!(f.coeff(i, 0).unwrap(), &expect);
        }
    }

    #[test]
    fn rrh_matches_bruteforce(seed in any::<u64>(), n in 0i64..4, k in 0i64..2, ell in 1usize..=2) {
        let za = ZAssignment::random(ell + 1, seed);
        let b = character_bruteforce(n, k, ell, 0, DEFAULT_BUDGET).unwrap();
        let at_zero = b.character.value.at_q_zero().unwrap().specialize(za.values()).unwrap();
        prop_assert_eq!(rrh_projective(n, k, ell, &za).unwrap(), at_zero);
    }
}
