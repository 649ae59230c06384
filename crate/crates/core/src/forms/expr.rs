use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{delta_shift, eisenstein, j, EtaQuotientSpec};
use crate::arith::{format_rational, int, lcm, parse_rational, Rational};
use crate::curve::{level_one_divisor, parse_point, Divisor, HeegnerPoint};
use crate::error::{Error, Result};
use crate::series::{series_from_json, series_to_json, QSeries};

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// E_k, k even ≥ 4.
    Eisenstein(i64),
    /// Δ(mτ).
    DeltaShift(u64),
    /// j(τ) − c with the classical j.
    JMinus(Rational),
    EtaQuotient(EtaQuotientSpec),
    /// t − c for a weight-0 eta quotient t with a single simple pole, together
    /// with a point where t takes the value c.
    EtaMinus {
        spec: EtaQuotientSpec,
        c: Rational,
        zero: HeegnerPoint,
    },
    /// A bare q-expansion (e.g. a multiplicative Hecke image) of known weight and level.
    Opaque {
        series: QSeries,
        weight: i64,
        level: u64,
    },
}

impl Atom {
    pub fn weight(&self) -> i64 {
        match self {
            Atom::Eisenstein(k) => *k,
            Atom::DeltaShift(_) => 12,
            Atom::JMinus(_) | Atom::EtaMinus { .. } => 0,
            Atom::EtaQuotient(s) => s.double_weight() / 2,
            Atom::Opaque { weight, .. } => *weight,
        }
    }

    pub fn level(&self) -> u64 {
        match self {
            Atom::Eisenstein(_) | Atom::JMinus(_) => 1,
            Atom::DeltaShift(m) => *m,
            Atom::EtaQuotient(s) | Atom::EtaMinus { spec: s, .. } => s.level(),
            Atom::Opaque { level, .. } => *level,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Atom::Eisenstein(k) if *k < 4 || k % 2 != 0 => Err(Error::UnsupportedWeight(format!(
                "Eisenstein series need even k ≥ 4, got {k}"
            ))),
            Atom::DeltaShift(0) => Err(Error::UnsupportedParameter("Δ(mτ) needs m ≥ 1".into())),
            Atom::EtaQuotient(s) => s.weight().map(|_| ()),
            Atom::EtaMinus { spec, .. } => {
                if spec.double_weight() != 0 {
                    return Err(Error::UnsupportedParameter(format!(
                        "eta quotient {spec} minus a constant must have weight 0"
                    )));
                }
                Ok(())
            }
            Atom::Opaque { level: 0, .. } => {
                Err(Error::UnsupportedParameter("level must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Expansion to O(q^prec).
    pub fn qexp(&self, prec: i64) -> Result<QSeries> {
        match self {
            Atom::Eisenstein(k) => eisenstein(*k, prec.max(1)),
            Atom::DeltaShift(m) => delta_shift(*m, prec),
            Atom::JMinus(c) => j(prec)?.add_constant(&-c),
            Atom::EtaQuotient(s) => s.qexp(prec),
            Atom::EtaMinus { spec, c, .. } => spec.qexp(prec)?.add_constant(&-c),
            Atom::Opaque { series, .. } => Ok(series.truncate(prec * series.denom() as i64)),
        }
    }

    /// Divisor on X₀(level of the atom).
    pub fn divisor(&self) -> Result<Divisor> {
        match self {
            Atom::Eisenstein(4) => Ok(Divisor::point(
                &HeegnerPoint::OMEGA,
                1,
                Rational::new(1.into(), 3.into()),
            )),
            Atom::Eisenstein(6) => Ok(Divisor::point(
                &HeegnerPoint::I,
                1,
                Rational::new(1.into(), 2.into()),
            )),
            Atom::Eisenstein(k) => level_one_divisor(&eisenstein(*k, k / 12 + 8)?, *k),
            Atom::DeltaShift(m) => Ok(EtaQuotientSpec::new(*m, [(*m, 24)])?.divisor()),
            Atom::JMinus(c) => Ok(Divisor::j_fiber(c, int(1)).sub(&Divisor::infinity(1, int(1)))),
            Atom::EtaQuotient(s) => Ok(s.divisor()),
            Atom::EtaMinus { spec, zero, .. } => {
                let polar = spec.divisor();
                let poles: Vec<_> = polar
                    .cusp_terms()
                    .filter(|(_, v)| **v < Rational::zero())
                    .collect();
                if poles.len() != 1 || *poles[0].1 != int(-1) {
                    return Err(Error::UnknownDivisor(format!(
                        "{spec} is not a Hauptmodul with a single simple pole"
                    )));
                }
                let mut d = Divisor::point(zero, spec.level(), int(1));
                let cusp = poles[0].0.representative(spec.level());
                d.add_cusp(&cusp, int(-1));
                Ok(d)
            }
            Atom::Opaque { .. } => Err(Error::UnknownDivisor(
                "opaque series carry no divisor data".into(),
            )),
        }
    }

    fn to_json(&self) -> Value {
        let (ty, params) = match self {
            Atom::Eisenstein(k) => ("Eisenstein", json!({"k": k})),
            Atom::DeltaShift(m) => ("DeltaShift", json!({"m": m})),
            Atom::JMinus(c) => ("JMinus", json!({"c": format_rational(c)})),
            Atom::EtaQuotient(s) => ("EtaQuotient", s.to_json()),
            Atom::EtaMinus { spec, c, zero } => {
                let mut p = spec.to_json();
                p["c"] = json!(format_rational(c));
                p["zero"] = json!([zero.a, zero.b, zero.c]);
                ("EtaMinus", p)
            }
            Atom::Opaque {
                series,
                weight,
                level,
            } => (
                "OpaqueSeries",
                json!({"series": series_to_json(series), "weight": weight, "level": level}),
            ),
        };
        json!({"type": ty, "params": params})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = |w: &str| Error::Parse(format!("atom JSON: bad {w}"));
        let ty = v
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("type"))?;
        let p = v.get("params").ok_or_else(|| bad("params"))?;
        let rational = |key: &str| -> Result<Rational> {
            parse_rational(p.get(key).and_then(Value::as_str).ok_or_else(|| bad(key))?)
        };
        let atom = match ty {
            "Eisenstein" => {
                Atom::Eisenstein(p.get("k").and_then(Value::as_i64).ok_or_else(|| bad("k"))?)
            }
            "DeltaShift" => {
                Atom::DeltaShift(p.get("m").and_then(Value::as_u64).ok_or_else(|| bad("m"))?)
            }
            "JMinus" => Atom::JMinus(rational("c")?),
            "EtaQuotient" => Atom::EtaQuotient(EtaQuotientSpec::from_json(p)?),
            "EtaMinus" => {
                let z = p
                    .get("zero")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("zero"))?;
                let abc: Vec<i64> = z.iter().filter_map(Value::as_i64).collect();
                if abc.len() != 3 {
                    return Err(bad("zero"));
                }
                Atom::EtaMinus {
                    spec: EtaQuotientSpec::from_json(p)?,
                    c: rational("c")?,
                    zero: HeegnerPoint::new(abc[0], abc[1], abc[2])?,
                }
            }
            "OpaqueSeries" => Atom::Opaque {
                series: series_from_json(p.get("series").ok_or_else(|| bad("series"))?)?,
                weight: p
                    .get("weight")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| bad("weight"))?,
                level: p
                    .get("level")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("level"))?,
            },
            other => return Err(Error::Parse(format!("unknown atom type {other:?}"))),
        };
        atom.validate()?;
        Ok(atom)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eisenstein(k) => write!(f, "E{k}"),
            Atom::DeltaShift(1) => write!(f, "Delta"),
            Atom::DeltaShift(m) => write!(f, "Delta:{m}"),
            Atom::JMinus(c) if c.is_zero() => write!(f, "j"),
            Atom::JMinus(c) => write!(f, "jminus:{c}"),
            Atom::EtaQuotient(s) => write!(f, "eta:{}:{s}", s.level()),
            Atom::EtaMinus { spec, c, zero } => {
                write!(f, "etaminus:{}:{spec}:{c}:{zero}", spec.level())
            }
            Atom::Opaque { weight, level, .. } => write!(f, "opaque[k={weight},N={level}]"),
        }
    }
}

/// A product ∏ atom^e with its weight and level.
#[derive(Clone, Debug, PartialEq)]
pub struct FormExpression {
    atoms: Vec<(Atom, i64)>,
    weight: i64,
    level: u64,
}

impl FormExpression {
    pub fn from_atoms(atoms: Vec<(Atom, i64)>) -> Result<Self> {
        let mut weight = 0;
        let mut level = 1;
        for (a, e) in &atoms {
            a.validate()?;
            weight += a.weight() * e;
            level = lcm(level, a.level());
        }
        let atoms = atoms.into_iter().filter(|(_, e)| *e != 0).collect();
        Ok(FormExpression {
            atoms,
            weight,
            level,
        })
    }

    pub fn atom(a: Atom) -> Result<Self> {
        Self::from_atoms(vec![(a, 1)])
    }

    pub fn eisenstein(k: i64) -> Result<Self> {
        Self::atom(Atom::Eisenstein(k))
    }

    pub fn delta() -> Self {
        Self::atom(Atom::DeltaShift(1)).unwrap()
    }

    /// j − c with the classical j.
    pub fn j_minus(c: Rational) -> Self {
        Self::atom(Atom::JMinus(c)).unwrap()
    }

    pub fn opaque(series: QSeries, weight: i64, level: u64) -> Result<Self> {
        Self::atom(Atom::Opaque {
            series,
            weight,
            level,
        })
    }

    pub fn atoms(&self) -> &[(Atom, i64)] {
        &self.atoms
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// The same expression regarded at a multiple of its level.
    pub fn at_level(&self, level: u64) -> Result<Self> {
        if !level.is_multiple_of(self.level) {
            return Err(Error::UnsupportedParameter(format!(
                "level {level} is not a multiple of {}",
                self.level
            )));
        }
        let mut out = self.clone();
        out.level = level;
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        FormExpression {
            atoms,
            weight: self.weight + other.weight,
            level: lcm(self.level, other.level),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        FormExpression {
            atoms: self
                .atoms
                .iter()
                .map(|(a, k)| (a.clone(), k * e))
                .filter(|(_, k)| *k != 0)
                .collect(),
            weight: self.weight * e,
            level: self.level,
        }
    }

    /// Product of the atom expansions, to O(q^prec) where the atoms allow it.
    pub fn qexp(&self, prec: i64) -> Result<QSeries> {
        let mut guard = 0;
        let mut last = None;
        for _ in 0..4 {
            let mut acc: Option<QSeries> = None;
            for (a, e) in &self.atoms {
                let t = a.qexp(prec + guard)?.pow(*e)?;
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.mul(&t),
                });
            }
            let acc = acc.unwrap_or_else(|| QSeries::one(prec.max(1) as usize));
            let d = acc.denom() as i64;
            let deficit = prec * d - acc.abs_precision();
            if deficit <= 0 {
                return Ok(acc.truncate(prec * d));
            }
            if self
                .atoms
                .iter()
                .any(|(a, _)| matches!(a, Atom::Opaque { .. }))
            {
                return Ok(acc);
            }
            guard += super::ceil_div(deficit, d);
            last = Some(acc);
        }
        Ok(last.unwrap())
    }

    /// Σ e·div(atom), every atom divisor lifted to the expression's level.
    pub fn divisor(&self) -> Result<Divisor> {
        let mut d = Divisor::zero(self.level);
        for (a, e) in &self.atoms {
            d = d.add(&a.divisor()?.lift(self.level)?.scale(&int(*e)));
        }
        Ok(d)
    }

    pub fn to_json(&self) -> Value {
        let atoms: Vec<Value> = self
            .atoms
            .iter()
            .map(|(a, e)| {
                let mut v = a.to_json();
                v["exp"] = json!(e);
                v
            })
            .collect();
        json!({"atoms": atoms, "weight": self.weight, "level": self.level})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let list = v
            .get("atoms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("form JSON needs atoms".into()))?;
        let mut atoms = Vec::new();
        for a in list {
            let e = a.get("exp").and_then(Value::as_i64).unwrap_or(1);
            atoms.push((Atom::from_json(a)?, e));
        }
        let mut out = Self::from_atoms(atoms)?;
        if let Some(w) = v.get("weight").and_then(Value::as_i64) {
            if w != out.weight {
                return Err(Error::Parse(format!(
                    "declared weight {w} but atoms give {}",
                    out.weight
                )));
            }
        }
        if let Some(n) = v.get("level").and_then(Value::as_u64) {
            out = out.at_level(n)?;
        }
        Ok(out)
    }
}

impl fmt::Display for FormExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(a, e)| {
                if *e == 1 {
                    a.to_string()
                } else {
                    format!("{a}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn parse_atom(s: &str) -> Result<Atom> {
    let bad = || Error::Parse(format!("unknown form {s:?}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let atom = match parts.as_slice() {
        ["Delta"] | ["delta"] => Atom::DeltaShift(1),
        ["Delta", m] | ["delta", m] => Atom::DeltaShift(m.parse().map_err(|_| bad())?),
        ["j"] => Atom::JMinus(Rational::zero()),
        ["j_shifted"] => Atom::JMinus(int(720)),
        ["jminus", c] => Atom::JMinus(parse_rational(c)?),
        ["eta", n, spec] => {
            Atom::EtaQuotient(EtaQuotientSpec::parse(n.parse().map_err(|_| bad())?, spec)?)
        }
        ["etaminus", n, spec, c, z] => Atom::EtaMinus {
            spec: EtaQuotientSpec::parse(n.parse().map_err(|_| bad())?, spec)?,
            c: parse_rational(c)?,
            zero: parse_point(z)?,
        },
        [e] if e.starts_with('E') => Atom::Eisenstein(e[1..].parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    atom.validate()?;
    Ok(atom)
}

/// Parses registry names joined by `*`, each optionally raised to `^e`:
/// `E4`, `E6`, `Delta`, `Delta:m`, `j`, `j_shifted`, `jminus:c`, `eta:N:m=r,…`,
/// `etaminus:N:m=r,…:c:[A,B,C]`.
pub fn parse_expression(s: &str) -> Result<FormExpression> {
    let mut atoms = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        let (base, e) = match factor.rsplit_once('^') {
            Some((b, e)) => {
                let e = e
                    .trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .replace('−', "-");
                (
                    b,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                )
            }
            None => (factor, 1),
        };
        atoms.push((parse_atom(base)?, e));
    }
    FormExpression::from_atoms(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::curve::Cusp;
    use crate::forms::delta;

    #[test]
    fn j_minus_1728() {
        let f = parse_expression("jminus:1728").unwrap();
        assert_eq!(
            f.qexp(2).unwrap(),
            QSeries::from_ints(-1, &[1, -984, 196884])
        );
        let d = f.divisor().unwrap();
        assert_eq!(d.coeff_at_point(&HeegnerPoint::I), int(1));
        assert_eq!(d.coeff_at_infinity(), int(-1));
        assert_eq!(d.degree(), int(0));
    }

    #[test]
    fn atom_divisors() {
        let e4 = FormExpression::eisenstein(4).unwrap().divisor().unwrap();
        assert_eq!(e4.coeff_at_point(&HeegnerPoint::OMEGA), rat(1, 3));
        assert_eq!(e4.degree(), rat(1, 3));
        let e6 = FormExpression::eisenstein(6).unwrap().divisor().unwrap();
        assert_eq!(e6.coeff_at_point(&HeegnerPoint::I), rat(1, 2));
        assert_eq!(
            FormExpression::delta().divisor().unwrap(),
            Divisor::infinity(1, int(1))
        );
    }

    #[test]
    fn hauptmodul_minus_512() {
        let f = parse_expression("etaminus:2:1=24,2=-24:512:[1,0,1]").unwrap();
        assert_eq!(f.level(), 2);
        assert_eq!(f.qexp(1).unwrap(), QSeries::from_ints(-1, &[1, -536]));
        let d = f.divisor().unwrap();
        assert_eq!(d.coeff_at_point(&HeegnerPoint::I), int(1));
        assert_eq!(d.coeff_at_infinity(), int(-1));
        assert_eq!(d.coeff_at_cusp(&Cusp::new(0, 1)), int(0));
    }

    #[test]
    fn products_and_json() {
        let f = parse_expression("E4*Delta^2").unwrap();
        assert_eq!(f.weight(), 28);
        let direct = FormExpression::eisenstein(4).unwrap().qexp(10).unwrap();
        let d = delta(10).unwrap();
        assert_eq!(f.qexp(10).unwrap(), direct.mul(&d).mul(&d).truncate(10));
        let back = FormExpression::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let g = parse_expression("eta:2:1=24,2=-24^-1").unwrap();
        assert_eq!(g.qexp(3).unwrap().order(), 1);
        assert_eq!(FormExpression::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn negative_powers_keep_precision() {
        let f = parse_expression("Delta^-1*E4^3").unwrap();
        assert_eq!(f.qexp(5).unwrap(), j(5).unwrap());
    }
}
