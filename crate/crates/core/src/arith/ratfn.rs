use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::forward_owned_binop;
use super::{BigRat, QSeries, Ring, UniPoly};
use crate::error::{domain, Result};

/// Element of the field `Q(q)`, stored as a reduced fraction with a monic
/// denominator. Two equal functions always have bit-identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRatFn {
    num: UniPoly,
    den: UniPoly,
}

/// Reduces `num/den` to canonical form.
pub fn ratfn_reduce(num: UniPoly, den: UniPoly) -> Result<QRatFn> {
    QRatFn::new(num, den)
}

impl QRatFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return domain("rational function with zero denominator");
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::normalized(num, den)
    }

    /// Makes the denominator monic; assumes the fraction is already coprime.
    fn normalized(num: UniPoly, den: UniPoly) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            QRatFn { num, den }
        } else {
            let inv = lead.recip();
            QRatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        QRatFn {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(BigRat::one())
    }

    pub fn from_rat(c: BigRat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rat(super::rat(c))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        QRatFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        let m = UniPoly::monomial(BigRat::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            QRatFn {
                num: UniPoly::one(),
                den: m,
            }
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if it does not depend on `q`.
    pub fn as_constant(&self) -> Option<BigRat> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("inverse of the zero rational function");
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// q-adic valuation: order of vanishing at `q = 0` (negative for poles).
    /// `None` for the zero function.
    pub fn q_valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    /// Value at `q = 0`; fails when `q = 0` is a pole.
    pub fn at_q_zero(&self) -> Result<BigRat> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return domain(format!("{self} has a pole at q = 0"));
        }
        Ok(self.num.coeff(0) / d0)
    }

    /// Evaluates at a rational value of `q`.
    pub fn eval(&self, q: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return domain(format!("{self} has a pole at q = {q}"));
        }
        Ok(self.num.eval(q) / d)
    }

    /// Power-series expansion in `q` through `q^order`. Requires a
    /// non-negative q-adic valuation.
    pub fn q_expand(&self, order: usize) -> Result<QSeries> {
        if self.is_zero() {
            return Ok(QSeries::zero(order));
        }
        let v = self.q_valuation().expect("nonzero");
        if v < 0 {
            return domain(format!("{self} has a pole at q = 0, no power-series expansion"));
        }
        let dv = self.den.valuation().expect("nonzero denominator");
        let num = self.num.unshift(dv);
        let den = self.den.unshift(dv);
        let den_series = QSeries::from_poly(&den, order);
        let inv = den_series.inverse()?;
        Ok(&QSeries::from_poly(&num, order) * &inv)
    }

    /// The polynomial that agrees with `self` modulo `q^{order+1}`.
    pub fn truncate_q(&self, order: usize) -> Result<Self> {
        Ok(Self::from_poly(self.q_expand(order)?.to_poly()))
    }
}

impl Default for QRatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &QRatFn {
    type Output = QRatFn;
    fn add(self, rhs: &QRatFn) -> QRatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return QRatFn::from_poly(&self.num + &rhs.num);
            }
            return QRatFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the new numerator.
        let g = self.den.gcd(&rhs.den);
        let b1 = self.den.exact_div(&g);
        let d1 = rhs.den.exact_div(&g);
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return QRatFn::zero();
        }
        let h = num.gcd(&g);
        let den = &b1 * &rhs.den;
        if h.is_one() {
            QRatFn::normalized(num, den)
        } else {
            QRatFn::normalized(num.exact_div(&h), den.exact_div(&h))
        }
    }
}

impl Neg for &QRatFn {
    type Output = QRatFn;
    fn neg(self) -> QRatFn {
        QRatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &QRatFn {
    type Output = QRatFn;
    fn sub(self, rhs: &QRatFn) -> QRatFn {
        self + &(-rhs)
    }
}

impl Mul for &QRatFn {
    type Output = QRatFn;
    fn mul(self, rhs: &QRatFn) -> QRatFn {
        if self.is_zero() || rhs.is_zero() {
            return QRatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRatFn::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        QRatFn::normalized(num, den)
    }
}

forward_owned_binop!(QRatFn, Add, add);
forward_owned_binop!(QRatFn, Sub, sub);
forward_owned_binop!(QRatFn, Mul, mul);

impl Neg for QRatFn {
    type Output = QRatFn;
    fn neg(self) -> QRatFn {
        -&self
    }
}

impl From<UniPoly> for QRatFn {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<BigRat> for QRatFn {
    fn from(c: BigRat) -> Self {
        Self::from_rat(c)
    }
}

impl Ring for QRatFn {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn vanishes(&self) -> bool {
        QRatFn::is_zero(self)
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
        self.inv().ok()
    }
}

impl fmt::Display for QRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for QRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRatFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn reduce_examples() {
        // (1-q^2)/(1-q) = 1+q
        let r = ratfn_reduce(p(&[1, 0, -1]), p(&[1, -1])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]));
        assert!(r.den().is_one());
        // 0/(1-q) = 0/1
        let z = ratfn_reduce(UniPoly::zero(), p(&[1, -1])).unwrap();
        assert!(z.is_zero() && z.den().is_one());
        // (1-q)(1-q^3)/(1-q^2) = (1-q^3)/(1+q)
        let r = ratfn_reduce(&p(&[1, -1]) * &p(&[1, 0, 0, -1]), p(&[1, 0, -1])).unwrap();
        let expect = ratfn_reduce(p(&[1, 0, 0, -1]), p(&[1, 1])).unwrap();
        assert_eq!(r, expect);
        assert_eq!(r.den(), &p(&[1, 1]));
        assert!(ratfn_reduce(p(&[1]), UniPoly::zero()).is_err());
    }

    #[test]
    fn canonical_sign() {
        // 1/(q-1) and -1/(1-q) are the same element
        let a = ratfn_reduce(p(&[1]), p(&[-1, 1])).unwrap();
        let b = ratfn_reduce(p(&[-1]), p(&[1, -1])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn expansion() {
        // 1/(1-q) = 1 + q + q^2 + ...
        let r = ratfn_reduce(p(&[1]), p(&[1, -1])).unwrap();
        let s = r.q_expand(4).unwrap();
        assert_eq!(s.to_poly(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(QRatFn::q_pow(-1).q_valuation(), Some(-1));
        assert!(QRatFn::q_pow(-1).q_expand(3).is_err());
        // q^2/(q - q^2) = q/(1-q)
        let r = ratfn_reduce(p(&[0, 0, 1]), p(&[0, 1, -1])).unwrap();
        assert_eq!(r.q_expand(3).unwrap().to_poly(), p(&[0, 1, 1, 1]));
    }

    #[test]
    fn display() {
        let r = ratfn_reduce(p(&[0, 1]), p(&[1, -1])).unwrap();
        assert_eq!(r.to_string(), "-q/(-1 + q)");
    }
}
