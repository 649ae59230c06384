use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::{ceil_div, euler_product};
use crate::arith::{gcd, int, Rational};
use crate::curve::{cusps, Divisor};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// ∏_{m | N} η(mτ)^{r_m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    level: u64,
    exponents: BTreeMap<u64, i64>,
}

impl EtaQuotientSpec {
    pub fn new(level: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::UnsupportedParameter(
                "eta quotient level must be positive".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for (m, r) in exponents {
            if m == 0 || !level.is_multiple_of(m) {
                return Err(Error::UnsupportedParameter(format!(
                    "η({m}τ) does not divide level {level}"
                )));
            }
            if r != 0 {
                *map.entry(m).or_insert(0) += r;
            }
        }
        map.retain(|_, r| *r != 0);
        Ok(EtaQuotientSpec {
            level,
            exponents: map,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// Twice the weight, Σ r_m.
    pub fn double_weight(&self) -> i64 {
        self.exponents.values().sum()
    }

    pub fn weight(&self) -> Result<i64> {
        let w = self.double_weight();
        if w % 2 != 0 {
            return Err(Error::UnsupportedWeightParity(w));
        }
        Ok(w / 2)
    }

    /// Leading exponent at i∞ times 24: Σ m·r_m.
    pub fn order24(&self) -> i64 {
        self.exponents.iter().map(|(&m, &r)| m as i64 * r).sum()
    }

    /// q-expansion to O(q^prec), on the grid D = 24/gcd(Σ m r_m, 24).
    pub fn qexp(&self, prec: i64) -> Result<QSeries> {
        self.weight()?;
        let o = self.order24();
        let g = gcd(o, 24);
        let grid = (24 / g) as u64;
        // ∏ ∏_n (1 − q^{mn})^{r_m} to integral precision covering q^{prec − o/24}
        let base_prec = (prec - o.div_euclid(24)).max(1);
        let mut acc = QSeries::one(base_prec as usize);
        for (&m, &r) in &self.exponents {
            let e = euler_product(ceil_div(base_prec, m as i64) + 1).rescale(&int(m as i64));
            acc = acc.mul(&e.truncate(base_prec).pow(r)?);
        }
        Ok(acc.regrid(grid).shift(o / g).truncate(prec * grid as i64))
    }

    /// Order at the cusps with denominator c | N (Ligozat):
    /// (N/24) Σ_δ gcd(c, δ)² r_δ / (gcd(c, N/c)·c·δ), measured in the local parameter.
    pub fn order_at(&self, c: u64) -> Rational {
        let n = self.level;
        let mut acc = Rational::zero();
        for (&delta, &r) in &self.exponents {
            let g = gcd(c as i64, delta as i64);
            let num = int(g * g * r);
            let den = int(gcd(c as i64, (n / c) as i64) * c as i64 * delta as i64);
            acc += num / den;
        }
        acc * int(n as i64) / int(24)
    }

    /// Divisor on X₀(N); eta quotients have no zeros or poles in ℍ.
    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::zero(self.level);
        for info in cusps(self.level) {
            let v = self.order_at(info.class.d);
            if !v.is_zero() {
                d.add_cusp(&info.rep, v);
            }
        }
        d
    }

    pub fn to_json(&self) -> Value {
        let exps: Map<String, Value> = self
            .exponents
            .iter()
            .map(|(m, r)| (m.to_string(), json!(r)))
            .collect();
        json!({"N": self.level, "exponents": exps})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("eta quotient JSON needs N and exponents".into());
        let level = v.get("N").and_then(Value::as_u64).ok_or_else(bad)?;
        let mut exps = Vec::new();
        for (k, r) in v
            .get("exponents")
            .and_then(Value::as_object)
            .ok_or_else(bad)?
        {
            let m = k.parse::<u64>().map_err(|_| bad())?;
            exps.push((m, r.as_i64().ok_or_else(bad)?));
        }
        Self::new(level, exps)
    }

    /// Parses "1=24,2=-24" at the given level.
    pub fn parse(level: u64, s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad eta spec {s:?}, expected m=r,m=r"));
        let mut exps = Vec::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (m, r) = part.split_once('=').ok_or_else(bad)?;
            let m = m.trim().parse::<u64>().map_err(|_| bad())?;
            let r = r
                .trim()
                .replace('−', "-")
                .parse::<i64>()
                .map_err(|_| bad())?;
            exps.push((m, r));
        }
        Self::new(level, exps)
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(m, r)| format!("{m}={r}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::curve::Cusp;
    use crate::forms::{delta, delta_shift};

    #[test]
    fn hauptmodul_level_two() {
        let t = EtaQuotientSpec::new(2, [(1, 24), (2, -24)]).unwrap();
        assert_eq!(
            t.qexp(3).unwrap(),
            QSeries::from_ints(-1, &[1, -24, 276, -2048])
        );
        let d = t.divisor();
        assert_eq!(d.coeff_at_infinity(), int(-1));
        assert_eq!(d.coeff_at_cusp(&Cusp::new(0, 1)), int(1));
    }

    #[test]
    fn single_factors() {
        let d1 = EtaQuotientSpec::new(1, [(1, 24)]).unwrap();
        assert_eq!(d1.qexp(8).unwrap(), delta(8).unwrap());
        let d2 = EtaQuotientSpec::new(2, [(2, 24)]).unwrap();
        assert_eq!(d2.qexp(9).unwrap(), delta_shift(2, 9).unwrap());
    }

    #[test]
    fn fractional_order() {
        let e = EtaQuotientSpec::new(1, [(1, 2)]).unwrap();
        let s = e.qexp(2).unwrap();
        assert_eq!(s.denom(), 12);
        assert_eq!(s.order(), 1);
        assert_eq!(s.coeff(13).unwrap(), int(-2));
        assert_eq!(e.order_at(1), rat(1, 12));
    }

    #[test]
    fn valence_for_delta_shift() {
        let d = EtaQuotientSpec::new(3, [(3, 24)]).unwrap();
        // weight 12, index 4
        assert_eq!(d.divisor().degree(), int(4));
    }
}
