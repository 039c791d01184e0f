//! Canonical JSON encoding.
//!
//! * `QRatFn` → `{"num": [c₀, c₁, …], "den": [...]}`, ascending in `q`;
//!   each coefficient is a JSON integer when it is an integer fitting in
//!   `i64`, otherwise a `"p/q"` (or big-integer) string.
//! * `ZLaurent` → `[{"exp": [e₁, …], "coef": QRatFn}, …]` sorted
//!   lexicographically by exponent vector.
//! * `QSeries` → `{"coeffs": [...], "order": N}`.

use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{fmt_rat, parse_rat, BigRat, QRatFn, QSeries, UniPoly, ZLaurent};

/// JSON value of a single rational coefficient.
pub fn rat_to_json(r: &BigRat) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return Value::from(i);
        }
    }
    Value::from(fmt_rat(r))
}

fn rat_from_json(v: &Value) -> Option<BigRat> {
    match v {
        Value::Number(n) => n.as_i64().map(super::rat),
        Value::String(s) => parse_rat(s),
        _ => None,
    }
}

struct Coeffs<'a>(&'a [BigRat]);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            seq.serialize_element(&rat_to_json(c))?;
        }
        seq.end()
    }
}

fn coeffs_from_json<E: de::Error>(v: &Value) -> Result<Vec<BigRat>, E> {
    let arr = v.as_array().ok_or_else(|| E::custom("expected coefficient array"))?;
    arr.iter()
        .map(|c| rat_from_json(c).ok_or_else(|| E::custom(format!("bad coefficient {c}"))))
        .collect()
}

impl Serialize for QRatFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &Coeffs(self.num().coeffs()))?;
        m.serialize_entry("den", &Coeffs(self.den().coeffs()))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for QRatFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        ratfn_from_value(&v)
    }
}

fn ratfn_from_value<E: de::Error>(v: &Value) -> Result<QRatFn, E> {
    let num = coeffs_from_json(v.get("num").ok_or_else(|| E::missing_field("num"))?)?;
    let den = coeffs_from_json(v.get("den").ok_or_else(|| E::missing_field("den"))?)?;
    QRatFn::new(UniPoly::from_coeffs(num), UniPoly::from_coeffs(den)).map_err(E::custom)
}

struct Term<'a>(&'a [i64], &'a QRatFn);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("exp", self.0)?;
        m.serialize_entry("coef", self.1)?;
        m.end()
    }
}

impl Serialize for ZLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

impl ZLaurent {
    /// Decodes the canonical encoding. The variable count must be supplied
    /// because the zero polynomial encodes as `[]`.
    pub fn from_json(v: &Value, nvars: usize) -> Result<Self, serde_json::Error> {
        use serde::de::Error as _;
        let arr = v
            .as_array()
            .ok_or_else(|| serde_json::Error::custom("expected term array"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let exp: Vec<i64> = serde_json::from_value(
                t.get("exp").cloned().ok_or_else(|| serde_json::Error::missing_field("exp"))?,
            )?;
            if exp.len() != nvars {
                return Err(serde_json::Error::custom("exponent vector length mismatch"));
            }
            let coef = ratfn_from_value(t.get("coef").ok_or_else(|| serde_json::Error::missing_field("coef"))?)?;
            terms.push((exp, coef));
        }
        Ok(ZLaurent::from_terms(nvars, terms))
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("coeffs", &Coeffs(self.coeffs()))?;
        m.serialize_entry("order", &self.order())?;
        m.end()
    }
}
