use super::{PowerSeries, QRatFn};
use crate::error::{domain, Error, Result};

/// Rational function of `t` over `Q(q)` with a factored denominator
/// `t^s · ∏ᵢ (1 − cᵢ·t)`.
///
/// Keeping the denominator factored makes a residue at a simple pole a
/// product over the remaining factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatT {
    num: Vec<QRatFn>,
    t_power: usize,
    factors: Vec<QRatFn>,
}

impl RatT {
    /// `num(t) / (t^t_power · ∏ (1 − c·t))`. Factors with `c = 0` are identically
    /// one and are dropped.
    pub fn new(num: Vec<QRatFn>, t_power: usize, factors: Vec<QRatFn>) -> Self {
        let mut num = num;
        while num.last().is_some_and(QRatFn::is_zero) {
            num.pop();
        }
        RatT {
            num,
            t_power,
            factors: factors.into_iter().filter(|c| !c.is_zero()).collect(),
        }
    }

    /// `1 / (t^t_power · ∏ (1 − c·t))`.
    pub fn reciprocal(t_power: usize, factors: Vec<QRatFn>) -> Self {
        Self::new(vec![QRatFn::one()], t_power, factors)
    }

    pub fn numerator(&self) -> &[QRatFn] {
        &self.num
    }

    pub fn t_power(&self) -> usize {
        self.t_power
    }

    pub fn factors(&self) -> &[QRatFn] {
        &self.factors
    }

    fn eval_num(&self, t: &QRatFn) -> QRatFn {
        self.num.iter().rev().fold(QRatFn::zero(), |acc, c| &(&acc * t) + c)
    }

    /// Distinct nonzero finite poles `1/c` with their multiplicities.
    pub fn nonzero_poles(&self) -> Result<Vec<(QRatFn, usize)>> {
        let mut out: Vec<(QRatFn, usize)> = Vec::new();
        for c in &self.factors {
            let p = c.inv()?;
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, m)) => *m += 1,
                None => out.push((p, 1)),
            }
        }
        Ok(out)
    }

    /// Sum of residues over every finite pole, including `t = 0` when present.
    /// Fails on any pole that is not simple.
    pub fn sum_finite_residues(&self) -> Result<QRatFn> {
        let mut acc = QRatFn::zero();
        if self.t_power > 0 {
            acc = &acc + &residue_at(self, &QRatFn::zero())?;
        }
        for (p, _) in self.nonzero_poles()? {
            acc = &acc + &residue_at(self, &p)?;
        }
        Ok(acc)
    }

    /// Expanded denominator coefficients, ascending in `t`.
    fn expanded_den(&self) -> Vec<QRatFn> {
        let mut d = vec![QRatFn::zero(); self.t_power];
        d.push(QRatFn::one());
        for c in &self.factors {
            let mut next = vec![QRatFn::zero(); d.len() + 1];
            for (i, a) in d.iter().enumerate() {
                next[i] = &next[i] + a;
                next[i + 1] = &next[i + 1] - &(a * c);
            }
            d = next;
        }
        d
    }
}

/// Residue of `f` at `t = pole`, which must be a simple root of the denominator.
pub fn residue_at(f: &RatT, pole: &QRatFn) -> Result<QRatFn> {
    if pole.is_zero() {
        return match f.t_power {
            0 => domain("t = 0 is not a pole"),
            1 => {
                let n0 = f.num.first().cloned().unwrap_or_default();
                Ok(n0)
            }
            m => Err(Error::UnsupportedMultiplicity {
                pole: "0".into(),
                multiplicity: m,
            }),
        };
    }
    let target = pole.inv()?;
    let hits: Vec<usize> = (0..f.factors.len()).filter(|&i| f.factors[i] == target).collect();
    let k = match hits.as_slice() {
        [] => return domain(format!("t = {pole} is not a root of the denominator")),
        [k] => *k,
        _ => {
            return Err(Error::UnsupportedMultiplicity {
                pole: pole.to_string(),
                multiplicity: hits.len(),
            })
        }
    };
    // (t − t0)·f → N(t0) / (t0^s · (−c_k) · ∏_{i≠k} (1 − c_i t0))
    let mut den = -&f.factors[k];
    den = &den * &pole.pow(f.t_power as i64)?;
    for (i, c) in f.factors.iter().enumerate() {
        if i != k {
            den = &den * &(&QRatFn::one() - &(c * pole));
        }
    }
    f.eval_num(pole).div(&den)
}

/// Residue at `t = ∞`, i.e. `−Res_{u=0} u⁻² f(1/u)`, computed from the degree gap.
pub fn residue_at_infinity(f: &RatT) -> Result<QRatFn> {
    if f.num.is_empty() {
        return Ok(QRatFn::zero());
    }
    let a = f.num.len() - 1;
    let den = f.expanded_den();
    let b = den.len() - 1;
    // u^{-2} f(1/u) = u^{b-a-2} · Ñ(u)/D̃(u) with reversed coefficient lists.
    if a + 1 < b {
        return Ok(QRatFn::zero());
    }
    let need = a + 1 - b;
    let rev = |v: &[QRatFn]| -> PowerSeries<QRatFn> {
        let mut r: Vec<QRatFn> = v.iter().rev().cloned().collect();
        r.resize(need + 1, QRatFn::zero());
        r.truncate(need + 1);
        PowerSeries::from_coeffs(r)
    };
    let quotient = rev(&f.num).mul(&rev(&den).mul_inv(need)?);
    Ok(-quotient.coeff(need)?.clone())
}
