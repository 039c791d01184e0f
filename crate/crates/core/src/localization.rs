//! Fixed-point localization on quasi-maps and the K-theoretic J-function.
//!
//! The `z` variables are specialized to distinct rationals while `q` stays
//! formal, so every contour integral becomes a finite sum of residues in
//! `Q(q)`. Residues are taken at simple poles `t = 1/z_j`.

use std::ops::Range;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::arith::{rat, rat_pow, residue_at, BigRat, PowerSeries, QRatFn, QSeries, RatT};
use crate::error::{domain, Result};
use crate::specialized::{specialized_eval, SpecPoint};

/// Rational values for `z₁, …, z_{ℓ+1}`: distinct and nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZAssignment {
    #[serde(serialize_with = "ser_rats")]
    values: Vec<BigRat>,
    seed: Option<u64>,
}

fn ser_rats<S: serde::Serializer>(v: &[BigRat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::arith::rat_to_json))
}

impl ZAssignment {
    pub fn new(values: Vec<BigRat>) -> Result<Self> {
        if values.iter().any(Zero::is_zero) {
            return domain("z values must be nonzero");
        }
        for (a, x) in values.iter().enumerate() {
            if values[a + 1..].contains(x) {
                return domain(format!("repeated z value {x} makes poles collide"));
            }
        }
        Ok(ZAssignment { values, seed: None })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rat(v)).collect())
    }

    /// Draws `nvars` distinct values `a/b` with `0 < |a| ≤ 20`, `1 ≤ b ≤ 9`.
    pub fn random(nvars: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<BigRat> = Vec::with_capacity(nvars);
        while values.len() < nvars {
            let mut a: i64 = rng.gen_range(1..=20);
            if rng.gen_bool(0.5) {
                a = -a;
            }
            let b: i64 = rng.gen_range(1..=9);
            let v = BigRat::new(a.into(), b.into());
            if !values.contains(&v) {
                values.push(v);
            }
        }
        ZAssignment {
            values,
            seed: Some(seed),
        }
    }

    pub fn values(&self) -> &[BigRat] {
        &self.values
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn nvars(&self) -> usize {
        self.values.len()
    }

    /// `∏ zᵣᵏ`.
    pub fn prod_power(&self, k: i64) -> BigRat {
        self.values.iter().map(|z| rat_pow(z, k)).product()
    }

    /// `e_r` of the values, with `e₀ = 1`.
    pub fn elementary(&self, r: usize) -> BigRat {
        // coefficients of ∏(1 + zᵢx), built incrementally
        let mut e = vec![BigRat::zero(); self.nvars() + 1];
        e[0] = BigRat::one();
        for z in &self.values {
            for i in (1..e.len()).rev() {
                let add = &e[i - 1] * z;
                e[i] += add;
            }
        }
        e.get(r).cloned().unwrap_or_else(BigRat::zero)
    }

    fn check_len(&self, ell: usize) -> Result<()> {
        if self.nvars() != ell + 1 {
            return domain(format!("{} z values for gl_{}", self.nvars(), ell + 1));
        }
        Ok(())
    }
}

/// An element of the equivariant K-ring of `P^ℓ` by its values at the
/// fixed points `t = 1/z_j`, each known modulo `q^{order+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KVector {
    pub components: Vec<QSeries>,
    pub order: usize,
}

fn check_n(n: i64) -> Result<()> {
    if n < 0 {
        return domain(format!("n = {n} must be non-negative"));
    }
    Ok(())
}

/// `(∏zᵏ) [tⁿ] ∏_j ∏_{m=0}^{d} 1/(1 − t z_j qᵐ)`: the integral over a contour
/// enclosing every nonzero pole, moved onto `t = 0`.
pub fn full_contour_value(n: i64, k: i64, ell: usize, d: usize, za: &ZAssignment) -> Result<QRatFn> {
    check_n(n)?;
    za.check_len(ell)?;
    let order = n as usize;
    let mut s = PowerSeries::constant(QRatFn::one(), order);
    for z in za.values() {
        for m in 0..=d {
            s = s.div_one_minus(&QRatFn::q_pow(m as i64).scale(z));
        }
    }
    Ok(s.coeff(order)?.scale(&za.prod_power(k)))
}

/// The fixed-point decomposition: one residue sum around `t = 1/z_j` per
/// component `i = 0..=d`, after rescaling `t ↦ t q^{−i}`.
pub fn localization_sum(n: i64, k: i64, ell: usize, d: usize, za: &ZAssignment) -> Result<QRatFn> {
    localization_sum_over(n, k, ell, d, za, 0..d + 1)
}

/// [`localization_sum`] restricted to the components in `components`.
///
/// Component `i` contributes `−q^{ni} Σ_j Res_{t=1/z_j} t^{−n−1} / ∏_{j',m}(1 − t z_{j'} q^{m−i})`.
pub fn localization_sum_over(
    n: i64,
    k: i64,
    ell: usize,
    d: usize,
    za: &ZAssignment,
    components: Range<usize>,
) -> Result<QRatFn> {
    check_n(n)?;
    za.check_len(ell)?;
    let poles: Vec<QRatFn> = za
        .values()
        .iter()
        .map(|z| QRatFn::from_rat(z.recip()))
        .collect();
    let mut total = QRatFn::zero();
    for i in components {
        let factors: Vec<QRatFn> = za
            .values()
            .iter()
            .flat_map(|z| {
                (0..=d).map(move |m| QRatFn::q_pow(m as i64 - i as i64).scale(z))
            })
            .collect();
        let f = RatT::reciprocal(n as usize + 1, factors);
        let mut inner = QRatFn::zero();
        for pole in &poles {
            inner = &inner + &residue_at(&f, pole)?;
        }
        total = &total + &(&inner * &QRatFn::q_pow(n * i as i64));
    }
    Ok(-total.scale(&za.prod_power(k)))
}

/// q-valuation of the `i`-th J-function term: `n·i + (ℓ+1)·i(i+1)/2`.
pub fn term_valuation(n: i64, ell: usize, i: usize) -> i64 {
    let i = i as i64;
    n * i + (ell as i64 + 1) * i * (i + 1) / 2
}

/// The `i`-th J-function term at `t = 1/z_j`, without the `∏zᵏ zⱼⁿ` prefactor:
/// `q^{ni} / ∏_r ∏_{m=1}^{i} (1 − (z_r/z_j) q^{−m})`.
pub fn jfunction_term(n: i64, j: usize, i: usize, za: &ZAssignment) -> QRatFn {
    let zj = &za.values()[j];
    let mut acc = QRatFn::q_pow(n * i as i64);
    for zr in za.values() {
        let w = QRatFn::from_rat(zr / zj);
        for m in 1..=i {
            let f = &QRatFn::one() - &(&w * &QRatFn::q_pow(-(m as i64)));
            acc = acc.div(&f).expect("q^{-m} w is never 1 for formal q");
        }
    }
    acc
}

/// `I_{n,k}` at `t = 1/z_j`, modulo `q^{q_order+1}`. Terms are summed while
/// their valuation stays within `q_order`; needs `n ≥ −(ℓ+1)` so that every
/// term is a power series in `q`.
pub fn jfunction_component(
    n: i64,
    k: i64,
    ell: usize,
    j: usize,
    za: &ZAssignment,
    q_order: usize,
) -> Result<QSeries> {
    za.check_len(ell)?;
    if j > ell {
        return domain(format!("component {j} out of range for gl_{}", ell + 1));
    }
    if n < -(ell as i64 + 1) {
        return domain(format!("n = {n} below -(ell+1): J-function terms have negative q-valuation"));
    }
    let prefactor = za.prod_power(k) * rat_pow(&za.values()[j], n);
    let mut acc = QSeries::zero(q_order);
    // v₀ = 0 and v_i − v_{i−1} = n + (ℓ+1)i ≥ 0, so the first term past
    // the order ends the sum.
    let mut i = 0;
    while term_valuation(n, ell, i) <= q_order as i64 {
        acc = &acc + &jfunction_term(n, j, i, za).q_expand(q_order)?;
        i += 1;
    }
    Ok(acc.scale(&prefactor))
}

/// All components of `I_{n,k}`.
pub fn jfunction(n: i64, k: i64, ell: usize, za: &ZAssignment, q_order: usize) -> Result<KVector> {
    let components = (0..=ell)
        .map(|j| jfunction_component(n, k, ell, j, za, q_order))
        .collect::<Result<Vec<_>>>()?;
    Ok(KVector {
        components,
        order: q_order,
    })
}

/// Componentwise `Σ_r (−1)^r e_r(z) I_{n−r,k} ≡ q^{exponent} I_{n,k}`; the true
/// eigenvalue has `exponent = n`.
pub fn eigprop_check_with(
    n: i64,
    k: i64,
    ell: usize,
    za: &ZAssignment,
    q_order: usize,
    exponent: i64,
) -> Result<bool> {
    check_n(n)?;
    if exponent < 0 {
        return domain("eigenvalue exponent must be non-negative");
    }
    for j in 0..=ell {
        let mut lhs = QSeries::zero(q_order);
        for r in 0..=ell + 1 {
            let term = jfunction_component(n - r as i64, k, ell, j, za, q_order)?.scale(&za.elementary(r));
            lhs = if r % 2 == 0 { &lhs + &term } else { &lhs - &term };
        }
        let rhs = jfunction_component(n, k, ell, j, za, q_order)?.shift(exponent as usize);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn eigprop_check(n: i64, k: i64, ell: usize, za: &ZAssignment, q_order: usize) -> Result<bool> {
    eigprop_check_with(n, k, ell, za, q_order, n)
}

/// `L̃(1/z_j) = ∏_r ∏_{m=1}^{q_order} 1/(1 − (z_r/z_j) qᵐ)`.
fn l_tilde(j: usize, za: &ZAssignment, q_order: usize) -> Result<QSeries> {
    let zj = &za.values()[j];
    let mut acc = QSeries::one(q_order);
    for zr in za.values() {
        let w = zr / zj;
        for m in 1..=q_order {
            let f = &QSeries::one(q_order) - &QSeries::monomial(w.clone(), m, q_order);
            acc = &acc * &f.inverse()?;
        }
    }
    Ok(acc)
}

/// `−Σ_j Res_{t=1/z_j} t⁻¹ I_{n,k}(t) L̃(t) / ∏_r(1 − z_r t)`, modulo `q^{q_order+1}`.
///
/// `I` and `L̃` are regular at `1/z_j`, so each residue is their product
/// there times the residue of `1/(t ∏(1 − z_r t))`.
pub fn gil_pairing(n: i64, k: i64, ell: usize, za: &ZAssignment, q_order: usize) -> Result<QSeries> {
    check_n(n)?;
    za.check_len(ell)?;
    let kernel = RatT::reciprocal(1, za.values().iter().cloned().map(QRatFn::from_rat).collect());
    let mut acc = QSeries::zero(q_order);
    for j in 0..=ell {
        let pole = QRatFn::from_rat(za.values()[j].recip());
        let res = residue_at(&kernel, &pole)?
            .as_constant()
            .expect("residue of a rational-coefficient kernel is rational");
        let f = &jfunction_component(n, k, ell, j, za, q_order)? * &l_tilde(j, za, q_order)?;
        acc = &acc - &f.scale(&res);
    }
    Ok(acc)
}

/// `Ψ(n, k)` with `z` specialized, expanded modulo `q^{q_order+1}`.
pub fn specialized_value(n: i64, k: i64, ell: usize, za: &ZAssignment, q_order: usize) -> Result<QSeries> {
    let p = SpecPoint::new(n, k, ell)?;
    specialized_eval(&p).specialize(za.values())?.q_expand(q_order)
}

/// One line of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub q_order: Option<usize>,
    pub pass: bool,
}
