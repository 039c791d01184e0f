use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{fmt_poly, forward_owned_binop};
use super::{BigRat, QRatFn, Ring, UniPoly};
use crate::error::{domain, Result};

/// A power series in `q` known modulo `q^{order+1}`.
///
/// Binary operations keep the smaller of the two orders, so chained
/// computations never claim more precision than their inputs carry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigRat>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigRat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRat::one(), order)
    }

    pub fn constant(c: BigRat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·q^k` modulo `q^{order+1}`.
    pub fn monomial(c: BigRat, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in p.coeffs().iter().take(order + 1).enumerate() {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRat {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn to_ratfn(&self) -> QRatFn {
        QRatFn::from_poly(self.to_poly())
    }

    /// Lowers the order to `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().take(order + 1).cloned().collect(),
        }
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for i in k..=self.order() {
            s.coeffs[i] = self.coeffs[i - k].clone();
        }
        s
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Series inverse; the constant coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return domain("q-series with zero constant term is not invertible");
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out = vec![BigRat::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Ok(QSeries { coeffs: out })
    }

    /// Whether `self` and the expansion of `f` agree through this order.
    pub fn agrees_with(&self, f: &QRatFn) -> Result<bool> {
        Ok(*self == f.q_expand(self.order())?)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeries { coeffs: out }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

forward_owned_binop!(QSeries, Add, add);
forward_owned_binop!(QSeries, Sub, sub);
forward_owned_binop!(QSeries, Mul, mul);

impl Ring for QSeries {
    fn zero_like(&self) -> Self {
        Self::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Self::one(self.order())
    }
    fn vanishes(&self) -> bool {
        QSeries::is_zero(self)
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
    fn unit_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, "q", f)?;
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}
