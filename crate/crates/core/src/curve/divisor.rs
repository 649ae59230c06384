//! Divisors on X₀(N) with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::cm;
use super::cusp::{parse_cusp, Cusp, CuspClass};
use super::point::{coset_rep, reduce_point, HeegnerPoint, PointKey};
use crate::algebra::Matrix2;
use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::numeric::jvalue::{j_inverse, j_value, reduce_numeric};
use crate::numeric::real::{bits_for_digits, Complex, Real};

/// Working precision (decimal digits) for numeric fallback points.
pub const NUMERIC_DIGITS: u32 = 64;
/// Relative tolerance under which two numeric points are identified.
pub const NUMERIC_TOL: f64 = 1e-20;

/// A non-CM point of X₀(1) known only numerically: a reduced z and its j-value.
#[derive(Clone, Debug)]
pub struct NumericPoint {
    pub z: Complex,
    pub j: Complex,
}

impl NumericPoint {
    pub fn from_z(z: &Complex) -> Self {
        let z = reduce_numeric(z);
        let j = j_value(&z);
        NumericPoint { z, j }
    }

    pub fn from_j(j: &Complex) -> Self {
        let z = j_inverse(j);
        NumericPoint { z, j: j.clone() }
    }

    pub fn same_as(&self, other: &NumericPoint) -> bool {
        same_j(&self.j, &other.j)
    }
}

fn same_j(a: &Complex, b: &Complex) -> bool {
    let p = a.precision();
    let scale = &Real::one(p) + &a.abs();
    let tol = Real::from_f64(NUMERIC_TOL, p);
    (a - b).abs() < &tol * &scale
}

#[derive(Clone, Debug)]
pub struct Divisor {
    level: u64,
    interior: BTreeMap<PointKey, Rational>,
    cusps: BTreeMap<CuspClass, Rational>,
    /// Level-one points j⁻¹(c) for rational c without a known CM representative.
    fibers: BTreeMap<Rational, Rational>,
    numeric: Vec<(NumericPoint, Rational)>,
}

impl Divisor {
    pub fn zero(level: u64) -> Self {
        Divisor {
            level,
            interior: BTreeMap::new(),
            cusps: BTreeMap::new(),
            fibers: BTreeMap::new(),
            numeric: Vec::new(),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn point(z: &HeegnerPoint, level: u64, coeff: Rational) -> Self {
        let mut d = Self::zero(level);
        d.add_point(z, coeff);
        d
    }

    pub fn cusp(c: &Cusp, level: u64, coeff: Rational) -> Self {
        let mut d = Self::zero(level);
        d.add_cusp(c, coeff);
        d
    }

    pub fn infinity(level: u64, coeff: Rational) -> Self {
        Self::cusp(&Cusp::INFINITY, level, coeff)
    }

    /// The level-one point with j-invariant `c`: exact when c is a class-number-one
    /// CM value, symbolic otherwise.
    pub fn j_fiber(c: &Rational, coeff: Rational) -> Self {
        let mut d = Self::zero(1);
        match cm::point_for_j(c) {
            Some(z) => d.add_point(&z, coeff),
            None => add_to(&mut d.fibers, c.clone(), coeff),
        }
        d
    }

    pub fn numeric_point(p: NumericPoint, coeff: Rational) -> Self {
        let mut d = Self::zero(1);
        d.add_numeric(p, coeff);
        d
    }

    pub fn add_point(&mut self, z: &HeegnerPoint, coeff: Rational) {
        let key = reduce_point(z, self.level).key;
        add_to(&mut self.interior, key, coeff);
    }

    pub fn add_cusp(&mut self, c: &Cusp, coeff: Rational) {
        let class = CuspClass::of(c, self.level);
        add_to(&mut self.cusps, class, coeff);
    }

    fn add_numeric(&mut self, p: NumericPoint, coeff: Rational) {
        if let Some(slot) = self.numeric.iter_mut().find(|(q, _)| q.same_as(&p)) {
            slot.1 += coeff;
        } else {
            self.numeric.push((p, coeff));
        }
        self.numeric.retain(|(_, c)| !c.is_zero());
    }

    pub fn interior(&self) -> impl Iterator<Item = (&PointKey, &Rational)> {
        self.interior.iter()
    }

    pub fn cusp_terms(&self) -> impl Iterator<Item = (&CuspClass, &Rational)> {
        self.cusps.iter()
    }

    pub fn fibers(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.fibers.iter()
    }

    pub fn numeric_terms(&self) -> &[(NumericPoint, Rational)] {
        &self.numeric
    }

    /// Canonical representative in ℍ of an interior key.
    pub fn key_point(&self, key: &PointKey) -> HeegnerPoint {
        key.form.act(&coset_rep(key.label, self.level))
    }

    pub fn coeff_at_point(&self, z: &HeegnerPoint) -> Rational {
        let key = reduce_point(z, self.level).key;
        self.interior
            .get(&key)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff_at_cusp(&self, c: &Cusp) -> Rational {
        self.cusps
            .get(&CuspClass::of(c, self.level))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff_at_infinity(&self) -> Rational {
        self.coeff_at_cusp(&Cusp::INFINITY)
    }

    pub fn has_cusp_support(&self) -> bool {
        !self.cusps.is_empty()
    }

    pub fn has_inexact_part(&self) -> bool {
        !self.fibers.is_empty() || !self.numeric.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.interior.is_empty()
            && self.cusps.is_empty()
            && self.fibers.is_empty()
            && self.numeric.is_empty()
    }

    pub fn degree(&self) -> Rational {
        self.interior
            .values()
            .chain(self.cusps.values())
            .chain(self.fibers.values())
            .chain(self.numeric.iter().map(|(_, c)| c))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        assert_eq!(
            self.level, other.level,
            "adding divisors of different levels"
        );
        let mut out = self.clone();
        for (k, v) in &other.interior {
            add_to(&mut out.interior, *k, v.clone());
        }
        for (k, v) in &other.cusps {
            add_to(&mut out.cusps, *k, v.clone());
        }
        for (k, v) in &other.fibers {
            add_to(&mut out.fibers, k.clone(), v.clone());
        }
        for (p, v) in &other.numeric {
            out.add_numeric(p.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Divisor {
        if r.is_zero() {
            return Divisor::zero(self.level);
        }
        let mut out = self.clone();
        out.interior.values_mut().for_each(|v| *v *= r);
        out.cusps.values_mut().for_each(|v| *v *= r);
        out.fibers.values_mut().for_each(|v| *v *= r);
        out.numeric.iter_mut().for_each(|(_, v)| *v *= r);
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Pull-back to X₀(M) for a multiple M of the level: every point splits
    /// into its Γ₀(M)-classes with multiplicity ω_N/ω_M at interior points and
    /// h_M/h_N at cusps.
    pub fn lift(&self, m: u64) -> Result<Divisor> {
        if !m.is_multiple_of(self.level) {
            return Err(Error::UnsupportedParameter(format!(
                "cannot lift a level-{} divisor to level {m}",
                self.level
            )));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        if self.has_inexact_part() {
            return Err(Error::UnsupportedParameter(
                "numeric points can only be lifted from level one after resolution".into(),
            ));
        }
        let n = self.level;
        let mut out = Divisor::zero(m);
        for (key, coeff) in &self.interior {
            for r in super::point::coset_reps_gamma0(m) {
                let z = key.form.act(&r);
                let low = reduce_point(&z, n);
                if low.key != *key {
                    continue;
                }
                let high = reduce_point(&z, m);
                if out.interior.contains_key(&high.key) {
                    continue;
                }
                let ratio = Rational::new((low.period as i64).into(), (high.period as i64).into());
                out.interior.insert(high.key, coeff * ratio);
            }
        }
        for info in super::cusp::cusps(m) {
            let low = CuspClass::of(&info.rep, n);
            if let Some(c) = self.cusps.get(&low) {
                let ratio = Rational::new((info.width as i64).into(), (low.width(n) as i64).into());
                add_to(&mut out.cusps, info.class, c * ratio);
            }
        }
        Ok(out)
    }

    /// Σ n_z Σ_i [α_i z] over the given coset representatives (all of positive
    /// determinant, normalising Γ₀(N) appropriately).
    pub fn act_by_reps(&self, reps: &[Matrix2]) -> Result<Divisor> {
        let mut out = Divisor::zero(self.level);
        for (key, coeff) in &self.interior {
            let z = self.key_point(key);
            for a in reps {
                out.add_point(&z.act(a), coeff.clone());
            }
        }
        for (class, coeff) in &self.cusps {
            let c = class.representative(self.level);
            for a in reps {
                out.add_cusp(&c.act(a), coeff.clone());
            }
        }
        if self.has_inexact_part() {
            if self.level != 1 {
                return Err(Error::UnsupportedParameter(
                    "numeric points are only supported at level one".into(),
                ));
            }
            let p = bits_for_digits(NUMERIC_DIGITS);
            let mut pts: Vec<(NumericPoint, Rational)> = self
                .fibers
                .iter()
                .map(|(c, v)| {
                    (
                        NumericPoint::from_j(&Complex::real(Real::from_rational(c, p))),
                        v.clone(),
                    )
                })
                .collect();
            pts.extend(self.numeric.iter().cloned());
            for (pt, coeff) in pts {
                for a in reps {
                    let w = mobius(&pt.z, a);
                    out.add_numeric(NumericPoint::from_z(&w), coeff.clone());
                }
            }
        }
        Ok(out)
    }

    /// Multiset of (j-value, coefficient) for every interior term of a level-one
    /// divisor, numerically.
    pub fn j_profile(&self, p: usize) -> Vec<(Complex, Rational)> {
        assert_eq!(self.level, 1);
        let mut out: Vec<(Complex, Rational)> = Vec::new();
        let mut push = |j: Complex, c: Rational| {
            if let Some(slot) = out.iter_mut().find(|(k, _)| same_j(k, &j)) {
                slot.1 += c;
            } else {
                out.push((j, c));
            }
        };
        for (key, c) in &self.interior {
            push(j_value(&key.form.to_complex(p)), c.clone());
        }
        for (jc, c) in &self.fibers {
            push(Complex::real(Real::from_rational(jc, p)), c.clone());
        }
        for (pt, c) in &self.numeric {
            push(pt.j.clone(), c.clone());
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// Equality with exact comparison of exact parts; inexact level-one parts are
    /// compared through their j-values within [`NUMERIC_TOL`].
    pub fn approx_eq(&self, other: &Divisor) -> bool {
        if self.level != other.level || self.cusps != other.cusps {
            return false;
        }
        if !self.has_inexact_part() && !other.has_inexact_part() {
            return self.interior == other.interior;
        }
        if self.level != 1 {
            return false;
        }
        let p = bits_for_digits(NUMERIC_DIGITS);
        let diff = self.sub(other);
        diff.j_profile(p).is_empty()
    }

    pub fn to_json(&self) -> Value {
        let interior: Vec<Value> = self
            .interior
            .iter()
            .map(|(k, c)| {
                let z = self.key_point(k);
                json!({"A": z.a, "B": z.b, "C": z.c, "coeff": format_rational(c)})
            })
            .collect();
        let cusps: Vec<Value> = self
            .cusps
            .iter()
            .map(|(k, c)| json!({"cusp": k.representative(self.level).to_string(), "coeff": format_rational(c)}))
            .collect();
        let mut numeric: Vec<Value> = self
            .fibers
            .iter()
            .map(|(j, c)| json!({"j": format_rational(j), "coeff": format_rational(c)}))
            .collect();
        for (pt, c) in &self.numeric {
            numeric.push(json!({
                "re": pt.z.re.to_string_digits(40),
                "im": pt.z.im.to_string_digits(40),
                "coeff": format_rational(c),
            }));
        }
        json!({"N": self.level, "interior": interior, "cusps": cusps, "numeric": numeric})
    }

    pub fn from_json(v: &Value) -> Result<Divisor> {
        let bad = |w: &str| Error::Parse(format!("divisor JSON: bad {w}"));
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .ok_or_else(|| bad("N"))?;
        let mut d = Divisor::zero(n);
        let coeff = |e: &Value| -> Result<Rational> {
            parse_rational(
                e.get("coeff")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("coeff"))?,
            )
        };
        for e in v
            .get("interior")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let g = |k: &str| e.get(k).and_then(Value::as_i64).ok_or_else(|| bad(k));
            let z = HeegnerPoint::new(g("A")?, g("B")?, g("C")?)?;
            d.add_point(&z, coeff(e)?);
        }
        for e in v
            .get("cusps")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let c = parse_cusp(
                e.get("cusp")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("cusp"))?,
            )?;
            d.add_cusp(&c, coeff(e)?);
        }
        let p = bits_for_digits(NUMERIC_DIGITS);
        for e in v
            .get("numeric")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            if let Some(j) = e.get("j").and_then(Value::as_str) {
                let j = parse_rational(j)?;
                d = d.add(&Divisor::j_fiber(&j, coeff(e)?));
            } else {
                let s = |k: &str| e.get(k).and_then(Value::as_str).ok_or_else(|| bad(k));
                let z = Complex::new(Real::parse(s("re")?, p), Real::parse(s("im")?, p));
                d.add_numeric(NumericPoint::from_z(&z), coeff(e)?);
            }
        }
        Ok(d)
    }
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, Rational>, k: K, v: Rational) {
    let e = map.entry(k).or_insert_with(Rational::zero);
    *e += v;
    if e.is_zero() {
        map.retain(|_, c| !c.is_zero());
    }
}

/// (az + b)/(cz + d).
pub fn mobius(z: &Complex, m: &Matrix2) -> Complex {
    let p = z.precision();
    let r = |x: i64| Complex::real(Real::from_i64(x, p));
    let num = &(&r(m.a) * z) + &r(m.b);
    let den = &(&r(m.c) * z) + &r(m.d);
    &num / &den
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, String)> = Vec::new();
        for (k, c) in &self.interior {
            terms.push((c.clone(), format!("{}", self.key_point(k))));
        }
        for (k, c) in &self.fibers {
            terms.push((c.clone(), format!("j={}", format_rational(k))));
        }
        for (p, c) in &self.numeric {
            terms.push((
                c.clone(),
                format!(
                    "z≈{}+{}i",
                    p.z.re.to_string_digits(12),
                    p.z.im.to_string_digits(12)
                ),
            ));
        }
        for (k, c) in &self.cusps {
            terms.push((c.clone(), k.representative(self.level).to_string()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, name)) in terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if a.is_one() {
                write!(f, "[{name}]")?;
            } else {
                write!(f, "({})[{name}]", format_rational(&a))?;
            }
        }
        Ok(())
    }
}
