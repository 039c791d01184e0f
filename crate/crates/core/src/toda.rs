//! q-Toda Hamiltonians as difference operators on lattice functions, and
//! exact checks of the eigenvalue equations `H_r Ψ = e_r(z) Ψ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{QRatFn, UniPoly, ZLaurent};
use crate::error::{domain, Result};
use crate::gz::{whittaker_eval, LatticePoint};

/// Which Hamiltonian: `H_r` for `gl_{ℓ+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HamiltonianSpec {
    ell: usize,
    r: usize,
}

impl HamiltonianSpec {
    pub fn new(ell: usize, r: usize) -> Result<Self> {
        if ell == 0 {
            return domain("ell must be at least 1");
        }
        if r == 0 || r > ell + 1 {
            return domain(format!("Hamiltonian index r={r} outside 1..={}", ell + 1));
        }
        Ok(HamiltonianSpec { ell, r })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn r(&self) -> usize {
        self.r
    }
}

type Evaluator = dyn Fn(&LatticePoint) -> ZLaurent + Send + Sync;

/// A function on the lattice with values in `ZLaurent`, optionally memoized.
///
/// Clones share the evaluator and the cache.
#[derive(Clone)]
pub struct LatticeFn {
    nvars: usize,
    eval: Arc<Evaluator>,
    memo: Option<Arc<RwLock<HashMap<LatticePoint, ZLaurent>>>>,
}

impl LatticeFn {
    pub fn new(nvars: usize, f: impl Fn(&LatticePoint) -> ZLaurent + Send + Sync + 'static) -> Self {
        LatticeFn {
            nvars,
            eval: Arc::new(f),
            memo: None,
        }
    }

    /// Turns on caching. The evaluator is pure, so two threads racing to
    /// insert the same point insert the same value.
    pub fn memoized(mut self) -> Self {
        self.memo = Some(Arc::new(RwLock::new(HashMap::new())));
        self
    }

    /// The Whittaker function `Ψ` in `ℓ + 1` variables.
    pub fn whittaker(ell: usize) -> Self {
        Self::new(ell + 1, whittaker_eval).memoized()
    }

    /// `1` at `at`, `0` elsewhere.
    pub fn indicator(at: LatticePoint) -> Self {
        let n = at.len();
        Self::new(n, move |p| {
            if *p == at {
                ZLaurent::one(n)
            } else {
                ZLaurent::zero(n)
            }
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, move |_| ZLaurent::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, p: &LatticePoint) -> ZLaurent {
        let Some(memo) = &self.memo else {
            return (self.eval)(p);
        };
        if let Some(v) = memo.read().expect("memo lock").get(p) {
            return v.clone();
        }
        let v = (self.eval)(p);
        memo.write().expect("memo lock").insert(p.clone(), v.clone());
        v
    }
}

impl fmt::Debug for LatticeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeFn")
            .field("nvars", &self.nvars)
            .field("memoized", &self.memo.is_some())
            .finish()
    }
}

/// Deliberate corruptions of the operator, for negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Perturbation {
    #[default]
    None,
    /// Omits the `X̃` factor attached to the first index of every subset.
    DropFirstFactor,
}

/// `X̃ᵢ(p) = 1 − q^{pᵢ − pᵢ₊₁ + 1}` for `i ≤ ℓ` (zero-based `i < ℓ`), `X̃_{ℓ+1} = 1`.
fn x_tilde(p: &[i64], i: usize) -> QRatFn {
    if i + 1 == p.len() {
        return QRatFn::one();
    }
    &QRatFn::one() - &QRatFn::q_pow(p[i] - p[i + 1] + 1)
}

/// `(H_r f)(point)`.
pub fn hamiltonian_apply(spec: &HamiltonianSpec, f: &LatticeFn, point: &LatticePoint) -> Result<ZLaurent> {
    hamiltonian_apply_with(spec, f, point, Perturbation::None)
}

/// `(H_r f)(point)`, optionally with a corrupted operator.
///
/// Sums over `i₁ < … < i_r` the product `∏ₛ X̃_{iₛ}^{1 − δ(i_{s+1} − iₛ, 1)}`
/// (sentinel `i_{r+1} = ℓ + 2`) evaluated at `point`, times `f` at `point`
/// shifted by one in each coordinate `iₛ`.
pub fn hamiltonian_apply_with(
    spec: &HamiltonianSpec,
    f: &LatticeFn,
    point: &LatticePoint,
    perturb: Perturbation,
) -> Result<ZLaurent> {
    let n = spec.ell + 1;
    if point.len() != n || f.nvars() != n {
        return domain(format!(
            "point of length {} and function in {} variables for gl_{n}",
            point.len(),
            f.nvars()
        ));
    }
    let p = point.coords();
    let mut acc = ZLaurent::zero(n);
    for subset in subsets(n, spec.r) {
        let mut coef = QRatFn::one();
        for (s, &i) in subset.iter().enumerate() {
            let next = subset.get(s + 1).copied().unwrap_or(n + 1);
            if next == i + 1 || (s == 0 && perturb == Perturbation::DropFirstFactor) {
                continue;
            }
            coef = &coef * &x_tilde(p, i);
        }
        if coef.is_zero() {
            continue;
        }
        let mut shifted = p.to_vec();
        for &i in &subset {
            shifted[i] += 1;
        }
        let v = f.eval(&LatticePoint(shifted));
        acc.add_assign_ref(&v.scale(&coef));
    }
    Ok(acc)
}

/// Increasing `r`-subsets of `0..n`, lexicographically.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `e_r(z₁, …, z_{ℓ+1})` for `1 ≤ r ≤ ℓ + 1`.
pub fn elementary_symmetric(r: usize, ell: usize) -> Result<ZLaurent> {
    if r == 0 || r > ell + 1 {
        return domain(format!("e_{r} requested for {} variables", ell + 1));
    }
    Ok(elementary(r, ell + 1))
}

/// `e_r` in `n` variables for any `r`, with `e₀ = 1` and `e_r = 0` for `r > n`.
pub(crate) fn elementary(r: usize, n: usize) -> ZLaurent {
    ZLaurent::from_terms(
        n,
        subsets(n, r).into_iter().map(|s| {
            let mut e = vec![0; n];
            for i in s {
                e[i] = 1;
            }
            (e, QRatFn::one())
        }),
    )
}

/// One pointwise comparison `H_r f = e_r f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCheck {
    pub point: LatticePoint,
    pub r: usize,
    pub lhs: ZLaurent,
    pub rhs: ZLaurent,
    pub equal: bool,
}

/// Outcome of an eigenvalue sweep; failures are data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigenReport {
    pub checks: Vec<EigenCheck>,
}

impl EigenReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EigenCheck> {
        self.checks.iter().filter(|c| !c.equal)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// `[{point, r, lhs, rhs, equal}, …]` in window order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.checks
                .iter()
                .map(|c| {
                    json!({
                        "point": c.point,
                        "r": c.r,
                        "lhs": c.lhs,
                        "rhs": c.rhs,
                        "equal": c.equal,
                    })
                })
                .collect(),
        )
    }
}

/// Checks `H_r Ψ = e_r(z) Ψ` at every point of `window`.
pub fn verify_eigen(ell: usize, r: usize, window: &[LatticePoint]) -> Result<EigenReport> {
    let spec = HamiltonianSpec::new(ell, r)?;
    verify_eigen_with(&spec, &LatticeFn::whittaker(ell), window, Perturbation::None)
}

/// Checks `H_r f = e_r(z) f` on `window`, points evaluated in parallel.
pub fn verify_eigen_with(
    spec: &HamiltonianSpec,
    f: &LatticeFn,
    window: &[LatticePoint],
    perturb: Perturbation,
) -> Result<EigenReport> {
    let er = elementary_symmetric(spec.r, spec.ell)?;
    let checks = window
        .par_iter()
        .map(|p| {
            let lhs = hamiltonian_apply_with(spec, f, p, perturb)?;
            let rhs = &er * &f.eval(p);
            let equal = lhs == rhs;
            Ok(EigenCheck {
                point: p.clone(),
                r: spec.r,
                lhs,
                rhs,
                equal,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenReport { checks })
}

/// The two scalar equations of the `gl₂` system at `p = (p₁, p₂)`:
/// `(1 − q^{p₁−p₂+1}) Ψ(p₁+1, p₂) + Ψ(p₁, p₂+1) = (z₁+z₂) Ψ(p)` and
/// `Ψ(p₁+1, p₂+1) = z₁z₂ Ψ(p)`.
pub fn gl2_system_holds(p: &LatticePoint) -> bool {
    assert_eq!(p.len(), 2);
    let psi = |a: i64, b: i64| whittaker_eval(&LatticePoint(vec![a, b]));
    let (a, b) = (p.0[0], p.0[1]);
    let z1 = ZLaurent::var(2, 0);
    let z2 = ZLaurent::var(2, 1);
    let x = QRatFn::from_poly(UniPoly::one()) - QRatFn::q_pow(a - b + 1);
    let first = &psi(a + 1, b).scale(&x) + &psi(a, b + 1);
    let second = psi(a + 1, b + 1);
    first == &(&z1 + &z2) * &psi(a, b) && second == &(&z1 * &z2) * &psi(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gz::{box_window, dominant_window};

    fn lp(p: &[i64]) -> LatticePoint {
        LatticePoint(p.to_vec())
    }

    #[test]
    fn spec_validation() {
        assert!(HamiltonianSpec::new(1, 0).is_err());
        assert!(HamiltonianSpec::new(1, 3).is_err());
        assert!(HamiltonianSpec::new(2, 3).is_ok());
    }

    #[test]
    fn first_hamiltonian_gl2() {
        let spec = HamiltonianSpec::new(1, 1).unwrap();
        let v = hamiltonian_apply(&spec, &LatticeFn::whittaker(1), &lp(&[0, 0])).unwrap();
        assert_eq!(v, &ZLaurent::var(2, 0) + &ZLaurent::var(2, 1));
    }

    #[test]
    fn top_hamiltonian_is_total_shift() {
        for ell in 1..=3 {
            let spec = HamiltonianSpec::new(ell, ell + 1).unwrap();
            let psi = LatticeFn::whittaker(ell);
            let origin = LatticePoint::zeros(ell + 1);
            let v = hamiltonian_apply(&spec, &psi, &origin).unwrap();
            assert_eq!(v, psi.eval(&LatticePoint(vec![1; ell + 1])));
            assert_eq!(v, ZLaurent::prod_power(ell + 1, 1));
        }
    }

    #[test]
    fn zero_function() {
        let spec = HamiltonianSpec::new(2, 1).unwrap();
        let v = hamiltonian_apply(&spec, &LatticeFn::zero(3), &lp(&[1, 0, 0])).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn elementary_examples() {
        let z = |i| ZLaurent::var(3, i);
        assert_eq!(elementary_symmetric(1, 1).unwrap(), &ZLaurent::var(2, 0) + &ZLaurent::var(2, 1));
        assert_eq!(elementary_symmetric(2, 1).unwrap(), &ZLaurent::var(2, 0) * &ZLaurent::var(2, 1));
        let e2 = &(&(&z(0) * &z(1)) + &(&z(0) * &z(2))) + &(&z(1) * &z(2));
        assert_eq!(elementary_symmetric(2, 2).unwrap(), e2);
        assert!(elementary_symmetric(0, 2).is_err());
        assert!(elementary_symmetric(4, 2).is_err());
        assert_eq!(elementary(0, 3), ZLaurent::one(3));
    }

    #[test]
    fn eigen_examples() {
        let w: Vec<_> = dominant_window(2, 0, 3);
        assert!(verify_eigen(1, 1, &w).unwrap().pass());
        let w3 = dominant_window(3, 0, 2);
        assert!(verify_eigen(2, 3, &w3).unwrap().pass());
        let spec = HamiltonianSpec::new(1, 1).unwrap();
        let ind = LatticeFn::indicator(lp(&[1, 0]));
        let rep = verify_eigen_with(&spec, &ind, &w, Perturbation::None).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn eigen_holds_off_the_cone() {
        // X̃ vanishes exactly where a shift would enter the cone from outside.
        let w = box_window(3, -1, 2);
        for r in 1..=3 {
            assert!(verify_eigen(2, r, &w).unwrap().pass(), "r={r}");
        }
    }

    #[test]
    fn dropped_factor_fails() {
        let spec = HamiltonianSpec::new(1, 1).unwrap();
        let w = dominant_window(2, 0, 2);
        let rep = verify_eigen_with(&spec, &LatticeFn::whittaker(1), &w, Perturbation::DropFirstFactor).unwrap();
        assert!(!rep.pass());
    }

    #[test]
    fn gl2_system() {
        for p in dominant_window(2, 0, 4) {
            assert!(gl2_system_holds(&p), "{p}");
        }
    }

    #[test]
    fn report_json_shape() {
        let rep = verify_eigen(1, 2, &[lp(&[0, 0])]).unwrap();
        let v = rep.to_json();
        assert_eq!(v[0]["equal"], Value::Bool(true));
        assert_eq!(v[0]["point"], json!([0, 0]));
        assert_eq!(v[0]["r"], json!(2));
    }
}
