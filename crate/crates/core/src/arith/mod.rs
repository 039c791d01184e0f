//! Exact arithmetic kernel.
//!
//! Everything above this module works over the tower
//! `BigRat ⊂ Q(q) ⊂ Q(q)[z₁^±1, …, z_N^±1]`, together with truncated power
//! series in an auxiliary variable `t` and q-adic expansions. Values are
//! immutable once built and every operation is a pure function.

mod json;
mod laurent;
mod poly;
mod qseries;
mod ratfn;
mod residue;
mod series;

pub use json::rat_to_json;
pub use laurent::{zlaurent_arith, LaurentOp, TruncatedLaurent, ZLaurent};
pub use poly::UniPoly;
pub use qseries::QSeries;
pub use ratfn::{ratfn_reduce, QRatFn};
pub use residue::{residue_at, residue_at_infinity, RatT};
pub use series::{series_coeff, series_mul_inv, FormalSeries, PowerSeries, TSeries};

use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// Parses `"p"` or `"p/q"` into a [`BigRat`].
pub fn parse_rat(s: &str) -> Option<BigRat> {
    s.trim().parse::<BigRat>().ok()
}

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

pub fn rat_frac(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

/// Integer power with a possibly negative exponent. Panics on `0^negative`.
pub fn rat_pow(base: &BigRat, exp: i64) -> BigRat {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

pub(crate) fn fmt_rat(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Commutative ring operations shared by every coefficient type, so that
/// truncated series can be written once.
///
/// Zero and one are produced from an existing element because some rings
/// (Laurent polynomials) carry shape information such as a variable count.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Ring for BigRat {
    fn zero_like(&self) -> Self {
        BigRat::zero()
    }
    fn one_like(&self) -> Self {
        BigRat::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
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
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

pub(crate) fn is_negative(r: &BigRat) -> bool {
    r.is_negative()
}
