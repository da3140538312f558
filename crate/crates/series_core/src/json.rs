use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::Coeff;
use crate::frac::FracSeries;
use crate::SeriesError;

#[derive(Serialize, Deserialize)]
struct Wire {
    denom: i64,
    trunc: i64,
    terms: Vec<(i64, String)>,
}

/// `{denom, trunc, terms: [[e, "coeff"], ...]}` with coefficients as decimal strings.
pub fn to_json<C: Coeff>(s: &FracSeries<C>) -> Value {
    let w = Wire {
        denom: s.denom(),
        trunc: s.trunc(),
        terms: s.terms().map(|(e, c)| (e, c.to_string())).collect(),
    };
    serde_json::to_value(w).expect("series wire form is always serializable")
}

pub fn from_json<C: Coeff>(v: &Value) -> Result<FracSeries<C>, SeriesError> {
    let w: Wire = serde_json::from_value(v.clone()).map_err(|e| SeriesError::Parse(e.to_string()))?;
    if w.denom <= 0 {
        return Err(SeriesError::Parse(format!("denominator {} is not positive", w.denom)));
    }
    let mut terms = Vec::with_capacity(w.terms.len());
    for (e, c) in w.terms {
        if e >= w.trunc {
            return Err(SeriesError::Parse(format!("exponent {e} at or past trunc {}", w.trunc)));
        }
        let c = C::parse_decimal(&c).ok_or_else(|| SeriesError::Parse(format!("bad coefficient {c:?}")))?;
        if c.is_zero() {
            return Err(SeriesError::Parse(format!("zero coefficient stored at {e}")));
        }
        terms.push((e, c));
    }
    Ok(FracSeries::from_terms(w.denom, w.trunc, terms))
}

impl<C: Coeff> Serialize for FracSeries<C> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        to_json(self).serialize(ser)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for FracSeries<C> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(de)?;
        from_json(&v).map_err(serde::de::Error::custom)
    }
}
