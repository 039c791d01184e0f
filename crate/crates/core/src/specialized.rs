//! The specialization `Ψ(n, k) = Ψ(n+k, k, …, k)`: closed form, difference
//! equation, generating function, and coefficient extraction from
//! `∏ᵢ Γ_q(zᵢ t)`.

use serde::Serialize;

use crate::arith::{QRatFn, TSeries, TruncatedLaurent, ZLaurent};
use crate::error::{domain, Result};
use crate::gz::{qfact, whittaker_eval, LatticePoint};
use crate::toda::elementary;

/// The arguments `(n, k)` of the specialization, in rank `ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpecPoint {
    pub n: i64,
    pub k: i64,
    pub ell: usize,
}

impl SpecPoint {
    pub fn new(n: i64, k: i64, ell: usize) -> Result<Self> {
        if ell == 0 {
            return domain("ell must be at least 1");
        }
        Ok(SpecPoint { n, k, ell })
    }

    pub fn nvars(&self) -> usize {
        self.ell + 1
    }

    /// `(n+k, k, …, k)`.
    pub fn lattice_point(&self) -> LatticePoint {
        let mut p = vec![self.k; self.nvars()];
        p[0] += self.n;
        LatticePoint(p)
    }

    fn with_n(&self, n: i64) -> Self {
        SpecPoint { n, ..*self }
    }
}

fn inv_qfact(n: i64) -> QRatFn {
    QRatFn::from_poly(qfact(n).expect("non-negative")).inv().expect("nonzero")
}

/// Weak compositions of `n` into `parts` parts, lexicographically descending
/// in the first part.
fn compositions(n: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(∏zᵢᵏ) Σ_{n₁+…+n_{ℓ+1}=n} ∏ zᵢ^{nᵢ}/(nᵢ)_q!`, and `0` for `n < 0`.
pub fn specialized_eval(p: &SpecPoint) -> ZLaurent {
    let nv = p.nvars();
    if p.n < 0 {
        return ZLaurent::zero(nv);
    }
    ZLaurent::from_terms(
        nv,
        compositions(p.n, nv).into_iter().map(|c| {
            let coef = c.iter().fold(QRatFn::one(), |acc, &ni| &acc * &inv_qfact(ni));
            (c.iter().map(|ni| ni + p.k).collect(), coef)
        }),
    )
}

/// Whether the pattern sum at `(n+k, k, …, k)` equals the closed form.
pub fn specialized_consistency(p: &SpecPoint) -> bool {
    whittaker_eval(&p.lattice_point()) == specialized_eval(p)
}

/// `∏_{m=0}^{q_order} 1/(1 − t qᵐ w)` to `t^{t_order}`. The product is finite,
/// so the coefficients are exact polynomials in `q`; they agree with
/// `Γ_q(wt)` modulo `q^{q_order+1}`.
pub fn gamma_q_truncated(weight: &ZLaurent, t_order: usize, q_order: usize) -> TSeries {
    let mut s = TSeries::constant(ZLaurent::one(weight.nvars()), t_order);
    for m in 0..=q_order {
        s = s.div_one_minus(&weight.scale(&QRatFn::q_pow(m as i64)));
    }
    s
}

/// `(∏zᵢᵏ) · [tⁿ] ∏ᵢ Γ_q(zᵢ t)`, reported modulo `q^{q_order+1}`.
pub fn specialized_via_series(p: &SpecPoint, q_order: usize) -> Result<TruncatedLaurent> {
    if p.n < 0 {
        return domain("coefficient extraction needs n >= 0");
    }
    let nv = p.nvars();
    let t_order = p.n as usize;
    let mut s = TSeries::constant(ZLaurent::one(nv), t_order);
    for i in 0..nv {
        let zi = ZLaurent::var(nv, i);
        for m in 0..=q_order {
            s = s.div_one_minus(&zi.scale(&QRatFn::q_pow(m as i64)));
        }
        // keep coefficients small between factors
        s = TSeries::from_coeffs(
            s.into_coeffs()
                .into_iter()
                .map(|c| c.truncate_q(q_order))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let c = s.coeff(t_order)?.shift(&vec![p.k; nv]);
    TruncatedLaurent::new(&c, q_order)
}

/// `Σ_{r=0}^{ℓ+1} (−1)^r e_r(z) Ψ(n−r, k)`, i.e. `∏ᵢ(1 − zᵢT⁻¹)` applied at `n`.
pub fn difference_op_apply(p: &SpecPoint) -> ZLaurent {
    let nv = p.nvars();
    let mut acc = ZLaurent::zero(nv);
    for r in 0..=nv {
        let term = &elementary(r, nv) * &specialized_eval(&p.with_n(p.n - r as i64));
        if r % 2 == 0 {
            acc.add_assign_ref(&term);
        } else {
            acc.add_assign_ref(&-term);
        }
    }
    acc
}

/// Whether `difference_op_apply(p) = q^{exponent} Ψ(n, k)`. The true
/// eigenvalue has `exponent = n`.
pub fn difference_equation_holds_with(p: &SpecPoint, exponent: i64) -> bool {
    difference_op_apply(p) == specialized_eval(p).scale(&QRatFn::q_pow(exponent))
}

pub fn difference_equation_holds(p: &SpecPoint) -> bool {
    difference_equation_holds_with(p, p.n)
}

/// `Σ_{n ≤ t_order} tⁿ Ψ(n, k)`.
pub fn generating_function(ell: usize, k: i64, t_order: usize) -> Result<TSeries> {
    let coeffs = (0..=t_order as i64)
        .map(|n| SpecPoint::new(n, k, ell).map(|p| specialized_eval(&p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TSeries::from_coeffs(coeffs))
}

/// Checks `∏ᵢ(1 − t zᵢ) Ψ(t, k) = Ψ(qt, k)` coefficientwise to `t^{t_order}`.
pub fn genfun_check(ell: usize, k: i64, t_order: usize) -> Result<bool> {
    let nv = ell + 1;
    let psi = generating_function(ell, k, t_order)?;
    let mut lhs = psi.clone();
    for i in 0..nv {
        let f = TSeries::linear(ZLaurent::one(nv), -ZLaurent::var(nv, i), t_order);
        lhs = lhs.mul(&f);
    }
    Ok(psi
        .coeffs()
        .iter()
        .enumerate()
        .all(|(n, c)| lhs.coeffs()[n] == c.scale(&QRatFn::q_pow(n as i64))))
}

/// The `tᵐ` coefficients of `Γ_q(t)` as exact rational functions: `1/(m)_q!`.
pub fn gamma_q_coefficients(t_order: usize) -> Vec<QRatFn> {
    (0..=t_order as i64).map(inv_qfact).collect()
}
