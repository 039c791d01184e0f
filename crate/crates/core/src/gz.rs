//! Gelfand-Zetlin patterns and the q-deformed class-one Whittaker function.
//!
//! A pattern for `gl_{ℓ+1}` is a triangle of integers `p_{k,i}`, `1 ≤ i ≤ k ≤ ℓ+1`,
//! whose consecutive rows interlace: `p_{k+1,i} ≥ p_{k,i} ≥ p_{k+1,i+1}`. The
//! Whittaker function at a top row `p_{ℓ+1}` is the weighted sum over all
//! patterns with that top row.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{BigRat, QRatFn, UniPoly, ZLaurent};
use crate::error::{domain, Result};

/// A point of the weight lattice `Z^{ℓ+1}`: the top row of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(p: Vec<i64>) -> Self {
        LatticePoint(p)
    }

    pub fn zeros(len: usize) -> Self {
        LatticePoint(vec![0; len])
    }

    /// Number of coordinates, `ℓ + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `p₁ ≥ p₂ ≥ … ≥ p_{ℓ+1}`.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Adds `delta` to coordinate `i` (zero-based).
    pub fn shifted(&self, i: usize, delta: i64) -> Self {
        let mut p = self.0.clone();
        p[i] += delta;
        LatticePoint(p)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Gelfand-Zetlin pattern; `rows[k-1]` is row `k` and has `k` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GZPattern {
    rows: Vec<Vec<i64>>,
}

impl GZPattern {
    /// Validates shape and interlacing.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return domain(format!("row {} has {} entries, expected {}", k + 1, row.len(), k + 1));
            }
        }
        let pat = GZPattern { rows };
        if !pat.is_interlacing() {
            return domain("rows do not interlace");
        }
        Ok(pat)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn top(&self) -> LatticePoint {
        LatticePoint(self.rows.last().cloned().unwrap_or_default())
    }

    pub fn is_interlacing(&self) -> bool {
        self.rows.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            lower
                .iter()
                .enumerate()
                .all(|(i, &x)| upper[i] >= x && x >= upper[i + 1])
        })
    }

    /// Exponent of `z_k` in the summand: `Σᵢ p_{k,i} − Σᵢ p_{k−1,i}`.
    pub fn weight(&self) -> Vec<i64> {
        let sums: Vec<i64> = self.rows.iter().map(|r| r.iter().sum()).collect();
        (0..sums.len())
            .map(|k| sums[k] - if k == 0 { 0 } else { sums[k - 1] })
            .collect()
    }

    /// Arguments of the q-factorials in the summand: the numerator collects
    /// the gaps `p_{k,i} − p_{k,i+1}` of the inner rows `2 ≤ k ≤ ℓ`, the
    /// denominator the two interlacing gaps of every entry below the top.
    pub fn factorial_args(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.rows.len();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for k in 1..n.saturating_sub(1) {
            let r = &self.rows[k];
            num.extend(r.windows(2).map(|w| w[0] - w[1]));
        }
        for k in 0..n.saturating_sub(1) {
            let (lo, hi) = (&self.rows[k], &self.rows[k + 1]);
            for i in 0..lo.len() {
                den.push(hi[i] - lo[i]);
                den.push(lo[i] - hi[i + 1]);
            }
        }
        (num, den)
    }

    /// The summand coefficient as an element of `Q(q)`.
    pub fn coefficient(&self) -> QRatFn {
        let (num, den) = self.factorial_args();
        let prod = |args: &[i64]| {
            args.iter()
                .fold(UniPoly::one(), |acc, &a| &acc * &qfact(a).expect("interlacing gaps are non-negative"))
        };
        QRatFn::new(prod(&num), prod(&den)).expect("q-factorials are nonzero")
    }
}

/// `(n)_q! = (1−q)(1−q²)⋯(1−qⁿ)`.
pub fn qfact(n: i64) -> Result<UniPoly> {
    if n < 0 {
        return domain(format!("q-factorial of negative integer {n}"));
    }
    let mut acc = UniPoly::one();
    for j in 1..=n as usize {
        acc = &acc * &UniPoly::one_minus(BigRat::one(), j);
    }
    Ok(acc)
}

/// Lazy enumeration of the patterns with a fixed top row.
///
/// Free entries are visited row by row from row `ℓ` down to row 1, and the
/// sequence is lexicographic in that order. State is a single pattern.
pub struct GzIter {
    rows: Vec<Vec<i64>>,
    /// `(row, index)` of each free entry, in odometer order.
    slots: Vec<(usize, usize)>,
    started: bool,
    done: bool,
}

impl GzIter {
    pub fn new(top: &LatticePoint) -> Self {
        let n = top.len();
        let mut rows: Vec<Vec<i64>> = (1..n).map(|k| vec![0; k]).collect();
        rows.push(top.0.clone());
        let slots = (0..n.saturating_sub(1))
            .rev()
            .flat_map(|k| (0..=k).map(move |i| (k, i)))
            .collect();
        let mut it = GzIter {
            rows,
            slots,
            started: false,
            done: n == 0 || !top.is_dominant(),
        };
        if !it.done {
            it.reset_from(0);
        }
        it
    }

    fn bounds(&self, slot: usize) -> (i64, i64) {
        let (k, i) = self.slots[slot];
        let upper = &self.rows[k + 1];
        (upper[i + 1], upper[i])
    }

    fn reset_from(&mut self, start: usize) {
        for s in start..self.slots.len() {
            let (k, i) = self.slots[s];
            self.rows[k][i] = self.bounds(s).0;
        }
    }

    fn advance(&mut self) -> bool {
        for s in (0..self.slots.len()).rev() {
            let (k, i) = self.slots[s];
            if self.rows[k][i] < self.bounds(s).1 {
                self.rows[k][i] += 1;
                self.reset_from(s + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for GzIter {
    type Item = GZPattern;

    fn next(&mut self) -> Option<GZPattern> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(GZPattern {
            rows: self.rows.clone(),
        })
    }
}

/// All patterns with top row `top`; empty when `top` is not dominant.
pub fn gz_enumerate(top: &LatticePoint) -> Vec<GZPattern> {
    GzIter::new(top).collect()
}

/// Number of patterns with top row `top`, without materializing them.
pub fn gz_count(top: &LatticePoint) -> usize {
    GzIter::new(top).count()
}

/// Product `∏ⱼ (1−qʲ)^{e_j}` recorded by its exponent vector (`e[j-1]` for `j`).
type CyclotomicExps = Vec<i32>;

fn factorial_exponents(num: &[i64], den: &[i64]) -> CyclotomicExps {
    let len = num.iter().chain(den).copied().max().unwrap_or(0).max(0) as usize;
    let mut e = vec![0i32; len];
    for &a in num {
        for x in &mut e[..a as usize] {
            *x += 1;
        }
    }
    for &a in den {
        for x in &mut e[..a as usize] {
            *x -= 1;
        }
    }
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

/// `Σ count · ∏(1−qʲ)^{e_j}` as a single reduced fraction, built over the
/// common denominator `∏(1−qʲ)^{m_j}` with `m_j = max(0, −min e_j)`.
fn sum_cyclotomic(terms: &HashMap<CyclotomicExps, i64>) -> QRatFn {
    let len = terms.keys().map(Vec::len).max().unwrap_or(0);
    let mut m = vec![0i32; len];
    for e in terms.keys() {
        for (j, &x) in e.iter().enumerate() {
            m[j] = m[j].max(-x);
        }
    }
    let mut powers: HashMap<(usize, i32), UniPoly> = HashMap::new();
    let mut power = |j: usize, p: i32| -> UniPoly {
        powers
            .entry((j, p))
            .or_insert_with(|| UniPoly::one_minus(BigRat::one(), j + 1).pow(p as u32))
            .clone()
    };
    let mut num = UniPoly::zero();
    // Sorted for a deterministic summation order.
    let ordered: BTreeMap<&CyclotomicExps, &i64> = terms.iter().collect();
    for (e, &count) in ordered {
        if count == 0 {
            continue;
        }
        let mut t = UniPoly::constant(BigRat::from_integer(count.into()));
        for (j, &mj) in m.iter().enumerate() {
            let p = e.get(j).copied().unwrap_or(0) + mj;
            if p > 0 {
                t = &t * &power(j, p);
            }
        }
        num = &num + &t;
    }
    let mut den = UniPoly::one();
    for (j, &p) in m.iter().enumerate() {
        if p > 0 {
            den = &den * &power(j, p);
        }
    }
    QRatFn::new(num, den).expect("product of (1-q^j) is nonzero")
}

/// `Ψ_z(top)` by the direct pattern sum; zero for non-dominant `top`.
pub fn whittaker_eval(top: &LatticePoint) -> ZLaurent {
    let nvars = top.len();
    let mut grouped: BTreeMap<Vec<i64>, HashMap<CyclotomicExps, i64>> = BTreeMap::new();
    for pat in GzIter::new(top) {
        let (num, den) = pat.factorial_args();
        *grouped
            .entry(pat.weight())
            .or_default()
            .entry(factorial_exponents(&num, &den))
            .or_insert(0) += 1;
    }
    ZLaurent::from_terms(
        nvars,
        grouped.into_iter().map(|(w, terms)| (w, sum_cyclotomic(&terms))),
    )
}

/// `Ψ_z(top)` by lowering the rank one step at a time:
/// `Ψ^{ℓ+1}(p) = Σ_{p'} Δ(p') · z_{ℓ+1}^{Σp − Σp'} · Q(p, p') · Ψ^{ℓ}(p')`
/// over rows `p'` interlacing `p`, with `Ψ^{gl₁}(p) = z₁^p`.
pub fn whittaker_recursive(top: &LatticePoint) -> ZLaurent {
    let mut memo = HashMap::new();
    recursive_inner(top, &mut memo)
}

fn recursive_inner(top: &LatticePoint, memo: &mut HashMap<LatticePoint, ZLaurent>) -> ZLaurent {
    let n = top.len();
    if !top.is_dominant() {
        return ZLaurent::zero(n);
    }
    if n == 1 {
        return ZLaurent::monomial(top.0.clone(), QRatFn::one());
    }
    if let Some(v) = memo.get(top) {
        return v.clone();
    }
    let p = &top.0;
    let mut acc = ZLaurent::zero(n);
    for lower in interlacing_rows(p) {
        let mut num = UniPoly::one();
        for w in lower.windows(2) {
            num = &num * &qfact(w[0] - w[1]).expect("dominant row");
        }
        let mut den = UniPoly::one();
        for i in 0..lower.len() {
            den = &den * &qfact(p[i] - lower[i]).expect("interlacing");
            den = &den * &qfact(lower[i] - p[i + 1]).expect("interlacing");
        }
        let coef = QRatFn::new(num, den).expect("nonzero");
        let lower = LatticePoint(lower);
        let mut shift = vec![0; n];
        shift[n - 1] = top.sum() - lower.sum();
        let sub = recursive_inner(&lower, memo);
        acc.add_assign_ref(&sub.embed(n).shift(&shift).scale(&coef));
    }
    memo.insert(top.clone(), acc.clone());
    acc
}

/// All rows of length `len(p) − 1` interlacing the row `p`, lexicographically.
fn interlacing_rows(p: &[i64]) -> Vec<Vec<i64>> {
    let m = p.len() - 1;
    let mut out = Vec::new();
    let mut cur: Vec<i64> = (0..m).map(|i| p[i + 1]).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < p[i]) else {
            return out;
        };
        cur[i] += 1;
        for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
            *c = p[j + 1];
        }
    }
}

/// All points of `{lo..=hi}^len`, lexicographically.
pub fn box_window(len: usize, lo: i64, hi: i64) -> Vec<LatticePoint> {
    if hi < lo {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![lo; len];
    loop {
        out.push(LatticePoint(cur.clone()));
        let Some(i) = (0..len).rev().find(|&i| cur[i] < hi) else {
            return out;
        };
        cur[i] += 1;
        for c in cur.iter_mut().skip(i + 1) {
            *c = lo;
        }
    }
}

/// Dominant points of `{lo..=hi}^len`, lexicographically.
pub fn dominant_window(len: usize, lo: i64, hi: i64) -> Vec<LatticePoint> {
    box_window(len, lo, hi)
        .into_iter()
        .filter(LatticePoint::is_dominant)
        .collect()
}

/// Total `z`-degree of every monomial of `f`, when it is uniform.
pub fn total_degree(f: &ZLaurent) -> Option<i64> {
    f.homogeneous_degree()
}
