use std::fmt;

use super::{BigRat, Ring, ZLaurent};
use crate::error::{domain, Error, Result};

/// Truncated power series `Σ_{n ≤ order} aₙ tⁿ` over a coefficient ring.
///
/// Always holds exactly `order + 1` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

/// Series in `t` over Laurent polynomials in `z`.
pub type TSeries = PowerSeries<ZLaurent>;

/// One-variable series over the rationals.
pub type FormalSeries = PowerSeries<BigRat>;

impl<R: Ring> PowerSeries<R> {
    /// Panics on an empty coefficient list; a series always knows its constant term.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    /// `c` as a series of the given order.
    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    /// `c + a·t`.
    pub fn linear(c: R, a: R, order: usize) -> Self {
        let mut s = Self::constant(c, order);
        if order >= 1 {
            s.coeffs[1] = a;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `tⁿ`; asking beyond the truncation is an error, never zero.
    pub fn coeff(&self, n: usize) -> Result<&R> {
        self.coeffs.get(n).ok_or(Error::Range {
            index: n,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().take(order + 1).cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::vanishes)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(),
        }
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out: Vec<R> = (0..=n).map(|_| self.coeffs[0].zero_like()).collect();
        for i in 0..=n {
            if self.coeffs[i].vanishes() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].vanishes() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&self.coeffs[i].times(&rhs.coeffs[j]));
            }
        }
        PowerSeries { coeffs: out }
    }

    /// `self / (1 - w·t)`, i.e. `gₙ = fₙ + w·gₙ₋₁`. Cheaper than a general
    /// inverse and the shape of every Γ_q-type factor.
    pub fn div_one_minus(&self, w: &R) -> Self {
        let mut out = self.coeffs.clone();
        for n in 1..out.len() {
            let add = w.times(&out[n - 1]);
            out[n] = out[n].plus(&add);
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse modulo `t^{order+1}`; requires a unit constant term.
    pub fn mul_inv(&self, order: usize) -> Result<Self> {
        let Some(inv0) = self.coeffs[0].unit_inverse() else {
            return domain(format!(
                "constant term {:?} of the series is not a unit",
                self.coeffs[0]
            ));
        };
        let f = if self.order() < order {
            // Missing coefficients are not known, so the request cannot be honored.
            return Err(Error::Range {
                index: order,
                order: self.order(),
            });
        } else {
            self.truncate(order)
        };
        let mut g: Vec<R> = Vec::with_capacity(order + 1);
        g.push(inv0.clone());
        for n in 1..=order {
            let mut acc = inv0.zero_like();
            for k in 1..=n {
                if !f.coeffs[k].vanishes() {
                    acc = acc.plus(&f.coeffs[k].times(&g[n - k]));
                }
            }
            g.push(acc.times(&inv0).negated());
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `self ∘ inner` for an inner series with zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].vanishes() {
            return domain("composition needs an inner series without constant term");
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner: a₀ + g(a₁ + g(a₂ + …))
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for n in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[n]);
        }
        Ok(acc)
    }
}

/// Inverse of `f` modulo `t^{order+1}`.
pub fn series_mul_inv<R: Ring>(f: &PowerSeries<R>, order: usize) -> Result<PowerSeries<R>> {
    f.mul_inv(order)
}

/// Coefficient of `tⁿ`.
pub fn series_coeff<R: Ring>(f: &PowerSeries<R>, n: usize) -> Result<R> {
    f.coeff(n).cloned()
}

impl<R: fmt::Display> fmt::Display for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]t^{n}")?;
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

impl<R: fmt::Debug> fmt::Debug for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}
