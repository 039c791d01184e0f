use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::forward_owned_binop;
use super::{rat_pow, BigRat, QRatFn, Ring};
use crate::error::{domain, Result};

/// Sparse Laurent polynomial in `z₁, …, z_N` with coefficients in `Q(q)`.
///
/// Terms are kept in a `BTreeMap`, so iteration (and serialization) follows
/// lexicographic order of exponent vectors. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZLaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, QRatFn>,
}

/// Selector for [`zlaurent_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation; fails when the operands live in different rings.
pub fn zlaurent_arith(op: LaurentOp, a: &ZLaurent, b: &ZLaurent) -> Result<ZLaurent> {
    if a.nvars != b.nvars {
        return domain(format!(
            "Laurent polynomials in {} and {} variables",
            a.nvars, b.nvars
        ));
    }
    Ok(match op {
        LaurentOp::Add => a + b,
        LaurentOp::Sub => a - b,
        LaurentOp::Mul => a * b,
    })
}

impl ZLaurent {
    pub fn zero(nvars: usize) -> Self {
        ZLaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, QRatFn::one())
    }

    pub fn constant(nvars: usize, c: QRatFn) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// `c · z^exps`.
    pub fn monomial(exps: Vec<i64>, c: QRatFn) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        ZLaurent { nvars, terms }
    }

    /// The variable `z_{i+1}` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, QRatFn::one())
    }

    /// `(z₁⋯z_N)^k`.
    pub fn prod_power(nvars: usize, k: i64) -> Self {
        Self::monomial(vec![k; nvars], QRatFn::one())
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, QRatFn)>) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &QRatFn)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i64]) -> QRatFn {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `c · z^exps` in place.
    pub fn add_term(&mut self, exps: Vec<i64>, c: QRatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &ZLaurent) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// Is this a single term `c·z^e` with `c ≠ 0`?
    pub fn as_monomial(&self) -> Option<(&[i64], &QRatFn)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// The common total degree of every term, if there is one.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &QRatFn) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        ZLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        ZLaurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Appends `extra` variables that do not occur (exponent 0).
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        ZLaurent {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Renames variables: `z_i ↦ z_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                let mut ne = vec![0; self.nvars];
                for (i, &x) in e.iter().enumerate() {
                    ne[perm[i]] = x;
                }
                (ne, c.clone())
            }),
        )
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn try_map_coeffs(&self, f: impl Fn(&QRatFn) -> Result<QRatFn>) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        Ok(out)
    }

    /// Replaces every coefficient by its expansion modulo `q^{order+1}`.
    pub fn truncate_q(&self, order: usize) -> Result<Self> {
        self.try_map_coeffs(|c| c.truncate_q(order))
    }

    /// Sets `q = 0`.
    pub fn at_q_zero(&self) -> Result<Self> {
        self.try_map_coeffs(|c| c.at_q_zero().map(QRatFn::from_rat))
    }

    /// Substitutes rational values for the `z` variables.
    pub fn specialize(&self, z: &[BigRat]) -> Result<QRatFn> {
        if z.len() != self.nvars {
            return domain(format!("{} values for {} variables", z.len(), self.nvars));
        }
        let mut acc = QRatFn::zero();
        for (e, c) in &self.terms {
            let mut m = BigRat::one();
            for (zi, &ei) in z.iter().zip(e) {
                if ei < 0 && zi.is_zero() {
                    return domain("negative power of a variable specialized to zero");
                }
                m *= rat_pow(zi, ei);
            }
            acc = &acc + &c.scale(&m);
        }
        Ok(acc)
    }
}

impl Add for &ZLaurent {
    type Output = ZLaurent;
    fn add(self, rhs: &ZLaurent) -> ZLaurent {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        out.add_assign_ref(small);
        out
    }
}

impl Neg for &ZLaurent {
    type Output = ZLaurent;
    fn neg(self) -> ZLaurent {
        ZLaurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &ZLaurent {
    type Output = ZLaurent;
    fn sub(self, rhs: &ZLaurent) -> ZLaurent {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Mul for &ZLaurent {
    type Output = ZLaurent;
    fn mul(self, rhs: &ZLaurent) -> ZLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = ZLaurent::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

forward_owned_binop!(ZLaurent, Add, add);
forward_owned_binop!(ZLaurent, Sub, sub);
forward_owned_binop!(ZLaurent, Mul, mul);

impl Neg for ZLaurent {
    type Output = ZLaurent;
    fn neg(self) -> ZLaurent {
        -&self
    }
}

impl Ring for ZLaurent {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn vanishes(&self) -> bool {
        ZLaurent::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    /// Units are the nonzero monomials.
    fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        let inv = c.inv().ok()?;
        Some(Self::monomial(e.iter().map(|x| -x).collect(), inv))
    }
}

impl fmt::Display for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, x) })
                .collect();
            match (c.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZLaurent[{}]({self})", self.nvars)
    }
}

/// A Laurent polynomial whose coefficients are only meaningful modulo
/// `q^{order+1}`; stored already truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurent {
    pub value: ZLaurent,
    pub order: usize,
}

impl TruncatedLaurent {
    pub fn new(value: &ZLaurent, order: usize) -> Result<Self> {
        Ok(TruncatedLaurent {
            value: value.truncate_q(order)?,
            order,
        })
    }

    /// Whether an exact value agrees with this one to the carried order.
    pub fn agrees_with(&self, exact: &ZLaurent) -> Result<bool> {
        Ok(self.value == exact.truncate_q(self.order)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> ZLaurent {
        ZLaurent::var(2, i)
    }

    #[test]
    fn arith_examples() {
        let z2inv = ZLaurent::monomial(vec![0, -1], QRatFn::one());
        let m = zlaurent_arith(LaurentOp::Mul, &z(0), &z2inv).unwrap();
        assert_eq!(m, ZLaurent::monomial(vec![1, -1], QRatFn::one()));

        let s = zlaurent_arith(LaurentOp::Add, &z(0), &-z(0)).unwrap();
        assert!(s.is_zero());

        let lhs = &(&z(0) + &z(1)) * &(&z(0) - &z(1));
        let rhs = &(&z(0) * &z(0)) - &(&z(1) * &z(1));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn mismatched_counts() {
        let a = ZLaurent::one(2);
        let b = ZLaurent::one(3);
        assert!(zlaurent_arith(LaurentOp::Add, &a, &b).is_err());
    }

    #[test]
    fn specialization() {
        let f = &z(0) + &z(1);
        let v = f.specialize(&[super::super::rat(2), super::super::rat(3)]).unwrap();
        assert_eq!(v, QRatFn::from_int(5));
    }

    #[test]
    fn display_is_lexicographic() {
        let f = &z(1) + &z(0);
        assert_eq!(f.to_string(), "z2 + z1");
    }
}
