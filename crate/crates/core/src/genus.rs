//! Genera through their logarithms: series reversion, the formal group law
//! `e(log z + log w)`, the q-deformed exponent `∏(1 − qᵐx)`, and the
//! Riemann-Roch-Hirzebruch residue on `P^ℓ`.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{fmt_rat, rat, rat_frac, residue_at, BigRat, FormalSeries, PowerSeries, QRatFn, QSeries, RatT};
use crate::error::{domain, Error, Result};
use crate::gz::qfact;
use crate::localization::ZAssignment;

/// `log(z) = z`: cohomology.
pub fn additive_log(order: usize) -> FormalSeries {
    FormalSeries::linear(rat(0), rat(1), order)
}

/// `log(z) = −ln(1 − z) = Σ zⁿ/n`: K-theory.
pub fn multiplicative_log(order: usize) -> FormalSeries {
    let mut c = vec![BigRat::zero(); order + 1];
    for (n, x) in c.iter_mut().enumerate().skip(1) {
        *x = rat_frac(1, n as i64);
    }
    FormalSeries::from_coeffs(c)
}

/// `1 − e^{−u} = Σ_{n≥1} (−1)^{n+1} uⁿ/n!`.
pub fn one_minus_exp_neg(order: usize) -> FormalSeries {
    let mut c = vec![BigRat::zero(); order + 1];
    let mut fact = BigRat::one();
    for (n, x) in c.iter_mut().enumerate().skip(1) {
        fact *= rat(n as i64);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        *x = rat(sign) / &fact;
    }
    FormalSeries::from_coeffs(c)
}

fn check_log(log: &FormalSeries, order: usize) -> Result<()> {
    let c = log.coeffs();
    if !c[0].is_zero() {
        return domain("a logarithm must have zero constant term");
    }
    if c.len() < 2 || c[1].is_zero() {
        return domain("a logarithm must have an invertible linear term");
    }
    if log.order() < order {
        return Err(Error::Range {
            index: order,
            order: log.order(),
        });
    }
    Ok(())
}

/// The compositional inverse `e` of `log`, modulo `u^{order+1}`.
///
/// Coefficients are solved one at a time: with `b₁ … b_{n−1}` known,
/// `[uⁿ] log(e(u)) = c + a₁bₙ` must vanish, where `c` is computed with `bₙ = 0`.
pub fn series_reversion(log: &FormalSeries, order: usize) -> Result<FormalSeries> {
    check_log(log, order)?;
    let log = log.truncate(order);
    let a1 = log.coeffs()[1].clone();
    let mut b = vec![BigRat::zero(); order + 1];
    if order >= 1 {
        b[1] = a1.recip();
    }
    for n in 2..=order {
        let e = FormalSeries::from_coeffs(b.clone());
        let c = log.compose(&e)?.coeffs()[n].clone();
        b[n] = -(c / &a1);
    }
    Ok(FormalSeries::from_coeffs(b))
}

/// A power series in `z, w` truncated at total degree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    /// `coeffs[i][j]` is the coefficient of `zⁱwʲ`, `i + j ≤ order`.
    coeffs: Vec<Vec<BigRat>>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries {
            order,
            coeffs: (0..=order).map(|i| vec![BigRat::zero(); order + 1 - i]).collect(),
        }
    }

    /// `f(z)` or `f(w)` viewed in two variables.
    fn from_univariate(f: &FormalSeries, in_w: bool, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in f.coeffs().iter().enumerate().take(order + 1) {
            if in_w {
                s.coeffs[0][n] = c.clone();
            } else {
                s.coeffs[n][0] = c.clone();
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `zⁱwʲ`; beyond the truncation it is an error.
    pub fn coeff(&self, i: usize, j: usize) -> Result<&BigRat> {
        if i + j > self.order {
            return Err(Error::Range {
                index: i + j,
                order: self.order,
            });
        }
        Ok(&self.coeffs[i][j])
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut s = self.clone();
        for (i, row) in s.coeffs.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c += &rhs.coeffs[i][j];
            }
        }
        s
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut s = Self::zero(self.order);
        for (i1, row1) in self.coeffs.iter().enumerate() {
            for (j1, a) in row1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=self.order - i1 - j1 {
                    for j2 in 0..=self.order - i1 - j1 - i2 {
                        let b = &rhs.coeffs[i2][j2];
                        if !b.is_zero() {
                            s.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        s
    }

    /// `f(w, z)`.
    pub fn swapped(&self) -> Self {
        let mut s = Self::zero(self.order);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                s.coeffs[j][i] = c.clone();
            }
        }
        s
    }

    /// Highest total degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        (0..=self.order)
            .rev()
            .find(|&deg| (0..=deg).any(|i| !self.coeffs[i][deg - i].is_zero()))
    }

    /// Nonzero terms `(i, j, c)` ordered by total degree, then by `i` descending.
    pub fn terms(&self) -> Vec<(usize, usize, BigRat)> {
        let mut out = Vec::new();
        for deg in 0..=self.order {
            for i in (0..=deg).rev() {
                let c = &self.coeffs[i][deg - i];
                if !c.is_zero() {
                    out.push((i, deg - i, c.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (i, j, c)) in terms.iter().enumerate() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let p = |v: &str, e: usize| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    [p("z", *i), p("w", *j)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*")
                }
            };
            let neg = c < &BigRat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let sep = match (n, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            if mono.is_empty() {
                write!(f, "{sep}{}", fmt_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{sep}{mono}")?;
            } else {
                write!(f, "{sep}{}*{mono}", fmt_rat(&abs))?;
            }
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariateSeries({self})")
    }
}

/// `f(z, w) = e(log z + log w)` to total degree `order`.
pub fn group_law(log: &FormalSeries, order: usize) -> Result<BivariateSeries> {
    let e = series_reversion(log, order)?;
    let s = BivariateSeries::from_univariate(log, false, order)
        .add(&BivariateSeries::from_univariate(log, true, order));
    // Horner in s; s has no constant term, so truncation is consistent.
    let mut acc = BivariateSeries::zero(order);
    for c in e.coeffs().iter().rev() {
        acc = acc.mul(&s);
        acc.coeffs[0][0] += c;
    }
    Ok(acc)
}

/// `φ([Pⁿ]) = (n+1)·[z^{n+1}] log(z)`.
pub fn genus_of_projective_space(log: &FormalSeries, n: usize) -> Result<BigRat> {
    let c = log.coeff(n + 1)?;
    Ok(c * rat(n as i64 + 1))
}

/// `∏_{m=0}^{q_order} (1 − qᵐ x)` modulo `x^{x_order+1}` and `q^{q_order+1}`.
pub fn q_exponent(x_order: usize, q_order: usize) -> PowerSeries<QSeries> {
    let mut acc = PowerSeries::constant(QSeries::one(q_order), x_order);
    for m in 0..=q_order {
        let f = PowerSeries::linear(
            QSeries::one(q_order),
            QSeries::monomial(rat(-1), m, q_order),
            x_order,
        );
        acc = acc.mul(&f);
    }
    acc
}

/// `Γ_q(x) = Σ xᵐ/(m)_q!` with each coefficient expanded to `q^{q_order}`.
pub fn gamma_q_series(x_order: usize, q_order: usize) -> Result<PowerSeries<QSeries>> {
    let coeffs = (0..=x_order as i64)
        .map(|m| {
            QRatFn::from_poly(qfact(m)?)
                .inv()
                .and_then(|c| c.q_expand(q_order))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// `−(∏zᵏ) Σ_j Res_{t=1/z_j} t^{−n−1} / ∏_r (1 − t z_r)`.
pub fn rrh_projective(n: i64, k: i64, ell: usize, za: &ZAssignment) -> Result<QRatFn> {
    if n < 0 {
        return domain(format!("n = {n} must be non-negative"));
    }
    if za.nvars() != ell + 1 {
        return domain(format!("{} z values for P^{ell}", za.nvars()));
    }
    let f = RatT::reciprocal(
        n as usize + 1,
        za.values().iter().cloned().map(QRatFn::from_rat).collect(),
    );
    let mut acc = QRatFn::zero();
    for z in za.values() {
        acc = &acc + &residue_at(&f, &QRatFn::from_rat(z.recip()))?;
    }
    Ok(-acc.scale(&za.prod_power(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversion_examples() {
        assert_eq!(series_reversion(&additive_log(6), 6).unwrap(), additive_log(6));
        let e = series_reversion(&multiplicative_log(8), 8).unwrap();
        assert_eq!(e, one_minus_exp_neg(8));
        let back = series_reversion(&e, 8).unwrap();
        assert_eq!(back, multiplicative_log(8));
        assert!(series_reversion(&FormalSeries::from_coeffs(vec![rat(1), rat(1)]), 1).is_err());
        assert!(series_reversion(&FormalSeries::from_coeffs(vec![rat(0), rat(0), rat(1)]), 2).is_err());
    }

    #[test]
    fn composition_identity() {
        let log = multiplicative_log(7);
        let e = series_reversion(&log, 7).unwrap();
        assert_eq!(log.compose(&e).unwrap(), additive_log(7));
        assert_eq!(e.compose(&log).unwrap(), additive_log(7));
    }

    #[test]
    fn group_laws() {
        let add = group_law(&additive_log(5), 5).unwrap();
        assert_eq!(add.terms(), vec![(1, 0, rat(1)), (0, 1, rat(1))]);
        let mul = group_law(&multiplicative_log(6), 6).unwrap();
        assert_eq!(mul.terms(), vec![(1, 0, rat(1)), (0, 1, rat(1)), (1, 1, rat(-1))]);
        assert_eq!(mul.degree(), Some(2));
        assert_eq!(mul.to_string(), "z + w - z*w + O(deg 7)");
        let odd = FormalSeries::from_coeffs(vec![rat(0), rat(2), rat_frac(1, 3), rat(-5), rat_frac(7, 2)]);
        let f = group_law(&odd, 4).unwrap();
        assert_eq!(f, f.swapped());
    }

    #[test]
    fn projective_space_genus() {
        for n in 0..5 {
            assert_eq!(genus_of_projective_space(&multiplicative_log(6), n).unwrap(), rat(1));
        }
        assert_eq!(genus_of_projective_space(&additive_log(3), 1).unwrap(), rat(0));
    }

    #[test]
    fn q_exponent_examples() {
        let e = q_exponent(2, 1);
        let c: Vec<Vec<i64>> = e
            .coeffs()
            .iter()
            .map(|s| s.coeffs().iter().map(|x| x.to_integer().try_into().unwrap()).collect())
            .collect();
        assert_eq!(c, vec![vec![1, 0], vec![-1, -1], vec![0, 1]]);
        let e0 = q_exponent(3, 0);
        assert_eq!(e0.coeffs()[1].coeff(0), &rat(-1));
        assert!(e0.coeffs()[2].is_zero());
        let prod = q_exponent(5, 5).mul(&gamma_q_series(5, 5).unwrap());
        assert_eq!(prod, PowerSeries::constant(QSeries::one(5), 5));
    }

    #[test]
    fn rrh_examples() {
        let za = ZAssignment::from_ints(&[2, 3]).unwrap();
        assert_eq!(rrh_projective(2, 0, 1, &za).unwrap(), QRatFn::from_int(19));
        assert_eq!(rrh_projective(0, 1, 1, &za).unwrap(), QRatFn::from_int(6));
        let za = ZAssignment::from_ints(&[2, 3, 5]).unwrap();
        assert_eq!(rrh_projective(1, 1, 2, &za).unwrap(), QRatFn::from_int(300));
    }
}
