//! Characters of sections of `L_k(n)` over the quasi-map space `QM_d(P^ℓ)`.
//!
//! The coordinates `a_{i,j}` (`1 ≤ i ≤ ℓ+1`, `0 ≤ j ≤ d`) carry weights
//! `qʲ zᵢ`, and degree-`n` sections are degree-`n` polynomials in them, so the
//! character is `(∏zᵢᵏ) hₙ` of the weight multiset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{BigRat, QRatFn, TSeries, TruncatedLaurent, UniPoly, ZLaurent};
use crate::error::{Error, Result};

/// Brute-force budget used when the caller does not supply one.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The weights `qʲ zᵢ` of the quasi-map coordinates, one per `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightMultiset {
    ell: usize,
    d: usize,
    /// `(i, j)`: zero-based variable index and q-power.
    weights: Vec<(usize, usize)>,
}

impl WeightMultiset {
    pub fn new(ell: usize, d: usize) -> Self {
        let weights = (0..=ell).flat_map(|i| (0..=d).map(move |j| (i, j))).collect();
        WeightMultiset { ell, d, weights }
    }

    pub fn weights(&self) -> &[(usize, usize)] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.ell + 1
    }

    /// The weight `qʲ zᵢ` as a Laurent monomial.
    pub fn weight(&self, idx: usize) -> ZLaurent {
        let (i, j) = self.weights[idx];
        ZLaurent::var(self.nvars(), i).scale(&QRatFn::q_pow(j as i64))
    }
}

/// `A^{(d)}_{n,k}` together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharResult {
    pub value: ZLaurent,
    pub d: usize,
    pub n: i64,
    pub k: i64,
}

/// Brute-force character and the number of monomials it visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub character: CharResult,
    pub monomials: u128,
}

/// `hₙ(w₁, …, w_m) = [tⁿ] ∏ 1/(1 − t wᵢ)`; zero for `n < 0`.
pub fn complete_homogeneous(n: i64, weights: &[ZLaurent], nvars: usize) -> ZLaurent {
    if n < 0 {
        return ZLaurent::zero(nvars);
    }
    let mut s = TSeries::constant(ZLaurent::one(nvars), n as usize);
    for w in weights {
        s = s.div_one_minus(w);
    }
    s.coeff(n as usize).expect("order n").clone()
}

/// `(∏zᵢᵏ) hₙ(z₁, …, z_{ℓ+1})`, the `q = 0` character.
pub fn symmetric_power_character(n: i64, k: i64, ell: usize) -> ZLaurent {
    let nv = ell + 1;
    let z: Vec<ZLaurent> = (0..nv).map(|i| ZLaurent::var(nv, i)).collect();
    complete_homogeneous(n, &z, nv).shift(&vec![k; nv])
}

/// `A^{(d)}_{n,k}` via `[tⁿ] ∏_{i,j} 1/(1 − t qʲ zᵢ)`. Exact, since the product is finite.
pub fn character_a(n: i64, k: i64, ell: usize, d: usize) -> CharResult {
    let ws = WeightMultiset::new(ell, d);
    let nv = ws.nvars();
    let weights: Vec<ZLaurent> = (0..ws.len()).map(|i| ws.weight(i)).collect();
    let value = complete_homogeneous(n, &weights, nv).shift(&vec![k; nv]);
    CharResult { value, d, n, k }
}

/// `C(n + m − 1, m − 1)`: degree-`n` monomials in `m` variables.
pub fn stars_and_bars(n: u64, m: u64) -> u128 {
    if m == 0 {
        return u128::from(n == 0);
    }
    let (top, r) = (n + m - 1, (m - 1).min(n));
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * u128::from(top - i) / u128::from(i + 1);
    }
    acc
}

/// `A^{(d)}_{n,k}` by listing every degree-`n` monomial in the coordinates.
///
/// The enumeration is split on the exponent of the first coordinate and the
/// shards run in parallel; partial sums are keyed by `(z-exponent, q-power)`.
pub fn character_bruteforce(n: i64, k: i64, ell: usize, d: usize, budget: u64) -> Result<BruteForce> {
    let ws = WeightMultiset::new(ell, d);
    let nv = ws.nvars();
    if n < 0 {
        return Ok(BruteForce {
            character: CharResult {
                value: ZLaurent::zero(nv),
                d,
                n,
                k,
            },
            monomials: 0,
        });
    }
    let m = ws.len();
    let required = stars_and_bars(n as u64, m as u64);
    if required > u128::from(budget) {
        return Err(Error::Budget { required, budget });
    }
    let n = n as usize;
    let weights = ws.weights().to_vec();
    let shards: Vec<(Tally, u128)> = (0..=n)
        .into_par_iter()
        .map(|first| {
            let mut tally = Tally::new();
            let mut count = 0u128;
            let mut exps = vec![0usize; m];
            exps[0] = first;
            for_each_composition(n - first, &mut exps[1..], &mut |rest| {
                count += 1;
                let mut z = vec![0i64; nv];
                let mut qp = 0usize;
                let (i0, j0) = weights[0];
                z[i0] += first as i64;
                qp += j0 * first;
                for (a, &(i, j)) in rest.iter().zip(&weights[1..]) {
                    z[i] += *a as i64;
                    qp += j * a;
                }
                *tally.entry((z, qp)).or_insert(0) += 1;
            });
            (tally, count)
        })
        .collect();
    let mut total = Tally::new();
    let mut monomials = 0u128;
    for (t, c) in shards {
        monomials += c;
        for (key, v) in t {
            *total.entry(key).or_insert(0) += v;
        }
    }
    let mut by_z: BTreeMap<Vec<i64>, Vec<BigRat>> = BTreeMap::new();
    for ((z, qp), c) in total {
        let coeffs = by_z.entry(z).or_default();
        if coeffs.len() <= qp {
            coeffs.resize(qp + 1, BigRat::zero());
        }
        coeffs[qp] += BigRat::from_integer(BigInt::from(c));
    }
    let value = ZLaurent::from_terms(
        nv,
        by_z.into_iter()
            .map(|(z, c)| (z, QRatFn::from_poly(UniPoly::from_coeffs(c)))),
    )
    .shift(&vec![k; nv]);
    Ok(BruteForce {
        character: CharResult {
            value,
            d,
            n: n as i64,
            k,
        },
        monomials,
    })
}

type Tally = BTreeMap<(Vec<i64>, usize), u64>;

/// Calls `f` on every way to write `n` as an ordered sum filling `slots`,
/// starting from `(n, 0, …, 0)`.
fn for_each_composition(n: usize, slots: &mut [usize], f: &mut impl FnMut(&[usize])) {
    let len = slots.len();
    if len == 0 {
        if n == 0 {
            f(slots);
        }
        return;
    }
    slots.iter_mut().for_each(|s| *s = 0);
    slots[0] = n;
    loop {
        f(slots);
        let Some(i) = (0..len - 1).rev().find(|&i| slots[i] > 0) else {
            return;
        };
        let tail = slots[len - 1];
        slots[len - 1] = 0;
        slots[i] -= 1;
        slots[i + 1] = tail + 1;
    }
}

/// `A^{(d)}_{n,k}` with `d = q_order`, reported modulo `q^{q_order+1}`.
/// Coordinates with q-power above `q_order` cannot reach that order, so the
/// result is the stabilized `d → ∞` character to this precision.
pub fn character_limit(n: i64, k: i64, ell: usize, q_order: usize) -> Result<TruncatedLaurent> {
    let a = character_a(n, k, ell, q_order);
    TruncatedLaurent::new(&a.value, q_order)
}

/// Whether `A^{(d)} ≡ A^{(d+1)}` modulo `q^{d+1}`.
pub fn stabilizes(n: i64, k: i64, ell: usize, d: usize) -> Result<bool> {
    let a = character_a(n, k, ell, d).value.truncate_q(d)?;
    let b = character_a(n, k, ell, d + 1).value.truncate_q(d)?;
    Ok(a == b)
}

/// Monomials the brute-force oracle would visit for these parameters.
pub fn required_monomials(n: i64, ell: usize, d: usize) -> u128 {
    if n < 0 {
        return 0;
    }
    stars_and_bars(n as u64, ((ell + 1) * (d + 1)) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(nv: usize, i: usize) -> ZLaurent {
        ZLaurent::var(nv, i)
    }

    fn one_plus_q() -> QRatFn {
        QRatFn::from_poly(UniPoly::from_ints(&[1, 1]))
    }

    #[test]
    fn composition_enumeration() {
        let mut seen = Vec::new();
        let mut slots = vec![0; 3];
        for_each_composition(2, &mut slots, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
        assert!(seen.iter().all(|s| s.iter().sum::<usize>() == 2));
        let mut empty_count = 0;
        for_each_composition(0, &mut [], &mut |_| empty_count += 1);
        assert_eq!(empty_count, 1);
        for (n, m) in [(4usize, 9usize), (3, 1), (0, 4), (5, 2)] {
            let mut c = 0u128;
            let mut slots = vec![0; m];
            for_each_composition(n, &mut slots, &mut |_| c += 1);
            assert_eq!(c, stars_and_bars(n as u64, m as u64), "n={n} m={m}");
        }
    }

    #[test]
    fn closed_form_examples() {
        let a = character_a(1, 0, 1, 1);
        assert_eq!(a.value, (&z(2, 0) + &z(2, 1)).scale(&one_plus_q()));
        assert_eq!(character_a(0, 3, 2, 2).value, ZLaurent::prod_power(3, 3));
        let a = character_a(2, 0, 1, 0).value.at_q_zero().unwrap();
        let h2 = &(&(&z(2, 0) * &z(2, 0)) + &(&z(2, 0) * &z(2, 1))) + &(&z(2, 1) * &z(2, 1));
        assert_eq!(a, h2);
        assert!(character_a(-1, 0, 1, 1).value.is_zero());
    }

    #[test]
    fn bruteforce_examples() {
        let b = character_bruteforce(1, 0, 1, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.monomials, 4);
        assert_eq!(b.character.value, (&z(2, 0) + &z(2, 1)).scale(&one_plus_q()));
        let b = character_bruteforce(2, 0, 1, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.monomials, 10);
        let b = character_bruteforce(0, 0, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.monomials, 1);
        assert_eq!(
            character_bruteforce(4, 0, 2, 2, 10),
            Err(Error::Budget { required: 495, budget: 10 })
        );
    }

    #[test]
    fn bruteforce_matches_closed_form() {
        for ell in 1..=2 {
            for d in 0..=2 {
                for n in 0..=3 {
                    let a = character_a(n, 1, ell, d);
                    let b = character_bruteforce(n, 1, ell, d, DEFAULT_BUDGET).unwrap();
                    assert_eq!(a, b.character, "ell={ell} d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn limit_example() {
        let v = character_limit(1, 0, 1, 3).unwrap();
        let geom = QRatFn::from_poly(UniPoly::from_ints(&[1, 1, 1, 1]));
        assert_eq!(v.value, (&z(2, 0) + &z(2, 1)).scale(&geom));
        assert!(stabilizes(3, 0, 2, 2).unwrap());
    }

    #[test]
    fn stars_and_bars_values() {
        assert_eq!(stars_and_bars(2, 4), 10);
        assert_eq!(stars_and_bars(0, 5), 1);
        assert_eq!(stars_and_bars(3, 0), 0);
        assert_eq!(stars_and_bars(4, 9), 495);
    }
}
