use serde_json::{json, Value};

use super::{Coefficient, CycSeries, QSeries, Series};
use crate::arith::{format_rational, parse_rational, Cyclotomic, Rational};
use crate::error::{Error, Result};

fn coeff_json<C: Coefficient>(c: &C) -> Value
where
    C: JsonCoeff,
{
    c.to_json()
}

pub trait JsonCoeff: Coefficient {
    fn to_json(&self) -> Value;
}

impl JsonCoeff for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl JsonCoeff for Cyclotomic {
    fn to_json(&self) -> Value {
        json!({
            "zeta_order": self.order(),
            "coeffs": self.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

pub fn series_to_json<C: JsonCoeff>(s: &Series<C>) -> Value {
    json!({
        "D": s.denom(),
        "order": s.order(),
        "precision": s.precision(),
        "coeffs": s.coeffs().iter().map(coeff_json).collect::<Vec<_>>(),
    })
}

fn header(v: &Value) -> Result<(u64, i64, usize, &Vec<Value>)> {
    let bad = |what: &str| Error::Parse(format!("series JSON: bad or missing {what:?}"));
    let d = v
        .get("D")
        .and_then(Value::as_u64)
        .filter(|&d| d > 0)
        .ok_or_else(|| bad("D"))?;
    let order = v
        .get("order")
        .and_then(Value::as_i64)
        .ok_or_else(|| bad("order"))?;
    let precision = v
        .get("precision")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("precision"))? as usize;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("coeffs"))?;
    if coeffs.len() != precision {
        return Err(Error::Parse(format!(
            "series JSON: precision {precision} but {} coefficients",
            coeffs.len()
        )));
    }
    Ok((d, order, precision, coeffs))
}

fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(crate::arith::int(n.as_i64().unwrap())),
        _ => Err(Error::Parse(format!("expected rational string, got {v}"))),
    }
}

fn parse_cyclotomic_value(v: &Value) -> Result<Cyclotomic> {
    if let Some(obj) = v.as_object() {
        let n = obj
            .get("zeta_order")
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse("cyclotomic JSON: bad zeta_order".into()))?;
        let cs = obj
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("cyclotomic JSON: missing coeffs".into()))?;
        let cs = cs
            .iter()
            .map(parse_rational_value)
            .collect::<Result<Vec<_>>>()?;
        return Ok(Cyclotomic::from_poly_coeffs(n as u32, cs));
    }
    Ok(Cyclotomic::from_rational(parse_rational_value(v)?, 1))
}

pub fn series_from_json(v: &Value) -> Result<QSeries> {
    let (d, order, _, coeffs) = header(v)?;
    let cs = coeffs
        .iter()
        .map(parse_rational_value)
        .collect::<Result<Vec<_>>>()?;
    if cs.is_empty() {
        return Ok(QSeries::zero((), d, order));
    }
    Ok(Series::from_coeffs((), d, order, cs))
}

pub fn cyclotomic_series_from_json(v: &Value) -> Result<CycSeries> {
    let (d, order, _, coeffs) = header(v)?;
    let cs = coeffs
        .iter()
        .map(parse_cyclotomic_value)
        .collect::<Result<Vec<_>>>()?;
    let ring = cs
        .iter()
        .fold(1u32, |r, c| <Cyclotomic as Coefficient>::join(r, c.order()));
    let cs: Vec<Cyclotomic> = cs.into_iter().map(|c| c.lift(ring)).collect();
    if cs.is_empty() {
        return Ok(CycSeries::zero(ring, d, order));
    }
    Ok(Series::from_coeffs(ring, d, order, cs))
}
