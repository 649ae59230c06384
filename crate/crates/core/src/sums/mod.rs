//! Divisor sums 𝒟_F(D) = Σ n_z F(z), the BKO pairing, Rohrlich-type sums and the
//! exact and numeric equivariance checks built on them.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::left_coset_reps;
use crate::arith::{format_rational, int, sigma1, Rational};
use crate::curve::divisor::mobius;
use crate::curve::{hecke_divisor, Cusp, CuspClass, Divisor};
use crate::error::{Error, Result};
use crate::forms::FormExpression;
use crate::hecke::hecke_multiplicative;
use crate::numeric::jvalue::{j_inverse, jn_value};
use crate::numeric::niebur::{niebur_value, EvalParams, PointValue};
use crate::numeric::real::{bits_for_digits, Complex, Real};

type Interior = Box<dyn Fn(&Complex) -> Result<Complex> + Send + Sync>;

/// A Γ₀(N)-invariant function on X₀(N): a rule for interior points plus
/// explicitly assigned cusp values.
pub struct PointEvaluator {
    level: u64,
    label: String,
    digits: u32,
    interior: Interior,
    /// Set when F is a rational constant, which keeps pairings exact.
    constant: Option<Rational>,
    cusp_values: BTreeMap<CuspClass, Complex>,
}

impl PointEvaluator {
    pub fn new<F>(level: u64, label: &str, digits: u32, f: F) -> Self
    where
        F: Fn(&Complex) -> Result<Complex> + Send + Sync + 'static,
    {
        PointEvaluator {
            level,
            label: label.to_string(),
            digits,
            interior: Box::new(f),
            constant: None,
            cusp_values: BTreeMap::new(),
        }
    }

    /// F ≡ c, with the same value at every cusp.
    pub fn constant(level: u64, c: Rational) -> Self {
        let digits = 30;
        let p = bits_for_digits(digits);
        let v = Complex::real(Real::from_rational(&c, p));
        let w = v.clone();
        let mut e = Self::new(
            level,
            &format!("const {}", format_rational(&c)),
            digits,
            move |_| Ok(w.clone()),
        );
        for info in crate::curve::cusps(level) {
            e.cusp_values.insert(info.class, v.clone());
        }
        e.constant = Some(c);
        e
    }

    /// j_n at level one with F(i∞) = 24σ₁(n).
    pub fn jn(n: u64, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        let mut e = Self::new(1, &format!("j_{n}"), digits, move |z| {
            jn_value(n, z, digits)
        });
        e.cusp_values.insert(
            CuspClass::infinity(1),
            Complex::real(Real::from_i64(24 * sigma1(n) as i64, p)),
        );
        e
    }

    /// F_{N,−m}(·, s) from the truncated Poincaré series; no cusp values.
    pub fn niebur(level: u64, m: u64, params: EvalParams) -> Self {
        let digits = 16;
        let p = bits_for_digits(digits);
        Self::new(
            level,
            &format!("F_{{{level},-{m}}}(s={})", params.s),
            digits,
            move |z| {
                let (x, y) = z.to_f64();
                let v = niebur_value(level, m, num_complex::Complex64::new(x, y), &params)?;
                Ok(Complex::from_f64(v.value.re, v.value.im, p))
            },
        )
    }

    pub fn with_cusp_value(mut self, cusp: &Cusp, value: Complex) -> Self {
        self.cusp_values
            .insert(CuspClass::of(cusp, self.level), value);
        self
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn precision(&self) -> usize {
        bits_for_digits(self.digits)
    }

    pub fn eval(&self, z: &Complex) -> Result<Complex> {
        (self.interior)(z)
    }

    pub fn cusp_value(&self, cusp: &Cusp) -> Result<Complex> {
        self.cusp_values
            .get(&CuspClass::of(cusp, self.level))
            .cloned()
            .ok_or_else(|| {
                Error::MissingCuspValue(format!("{} has no value at the cusp {cusp}", self.label))
            })
    }
}

impl fmt::Debug for PointEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointEvaluator({}, N = {})", self.label, self.level)
    }
}

#[derive(Clone, Debug)]
pub struct Contribution {
    /// "[A,B,C]", a cusp, "j=c" or a numeric z.
    pub point: String,
    pub coeff: Rational,
    pub value: Complex,
}

#[derive(Clone, Debug)]
pub struct PairingResult {
    pub value: Complex,
    /// The exact value when every evaluation was exact.
    pub exact: Option<Rational>,
    pub breakdown: Vec<Contribution>,
}

impl PairingResult {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn to_json(&self, digits: u32) -> Value {
        let c = |z: &Complex| json!([z.re.to_string_digits(digits), z.im.to_string_digits(digits)]);
        json!({
            "value": c(&self.value),
            "exact": self.exact.as_ref().map(format_rational),
            "breakdown": self.breakdown.iter().map(|t| json!({
                "point": t.point,
                "coeff": format_rational(&t.coeff),
                "value": c(&t.value),
            })).collect::<Vec<_>>(),
        })
    }
}

/// 𝒟_F(D) = Σ n_z F(z).
pub fn pair(f: &PointEvaluator, d: &Divisor) -> Result<PairingResult> {
    if f.level != d.level() {
        return Err(Error::UnsupportedParameter(format!(
            "evaluator of level {} paired with a divisor of level {}",
            f.level,
            d.level()
        )));
    }
    let p = f.precision();
    let mut breakdown = Vec::new();
    for (class, c) in d.cusp_terms() {
        let cusp = class.representative(d.level());
        breakdown.push(Contribution {
            point: cusp.to_string(),
            coeff: c.clone(),
            value: f.cusp_value(&cusp)?,
        });
    }
    for (key, c) in d.interior() {
        let z = d.key_point(key);
        breakdown.push(Contribution {
            point: z.to_string(),
            coeff: c.clone(),
            value: f.eval(&z.to_complex(p))?,
        });
    }
    for (jc, c) in d.fibers() {
        let z = j_inverse(&Complex::real(Real::from_rational(jc, p)));
        breakdown.push(Contribution {
            point: format!("j={}", format_rational(jc)),
            coeff: c.clone(),
            value: f.eval(&z)?,
        });
    }
    for (pt, c) in d.numeric_terms() {
        let z = Complex::new(pt.z.re.with_precision(p), pt.z.im.with_precision(p));
        let label = format!(
            "{}+{}i",
            pt.z.re.to_string_digits(20),
            pt.z.im.to_string_digits(20)
        );
        breakdown.push(Contribution {
            point: label,
            coeff: c.clone(),
            value: f.eval(&z)?,
        });
    }
    let mut value = Complex::zero(p);
    for t in &breakdown {
        value = &value + &t.value.scale(&Real::from_rational(&t.coeff, p));
    }
    let exact = f.constant.as_ref().map(|k| k * d.degree());
    Ok(PairingResult {
        value,
        exact,
        breakdown,
    })
}

/// (j_n, f)_BKO = Σ ord_z(f)/|PSL₂(ℤ)_z| j_n(z) + 24σ₁(n) ord_{i∞}(f).
pub fn bko_pairing(n: u64, f: &FormExpression, digits: u32) -> Result<PairingResult> {
    if f.level() != 1 {
        return Err(Error::UnsupportedParameter(
            "the BKO pairing is defined at level one".into(),
        ));
    }
    pair(&PointEvaluator::jn(n, digits), &f.divisor()?)
}

/// −Coeff_{q^m}(Θf/f) at s = 1, exactly.
pub fn r_at_s1(level: u64, m: u64, f: &FormExpression) -> Result<Rational> {
    let g = f.at_level(level.max(f.level()))?;
    log_coeff(&g.qexp(probe_order(&g)? + m as i64 + 1)?, m as i64).map(|c| -c)
}

/// Order at i∞, found by expanding until a nonzero coefficient appears.
pub fn probe_order(f: &FormExpression) -> Result<i64> {
    let mut prec = 1;
    loop {
        let s = f.qexp(prec)?;
        if !s.is_zero() {
            return Ok(s.order());
        }
        if prec > 1 << 12 {
            return Err(Error::PrecisionExhausted(
                "no nonzero coefficient found".into(),
            ));
        }
        prec *= 2;
    }
}

/// Coeff_{q^m}(Θf/f), zero for non-integral m.
fn log_coeff(f: &crate::series::QSeries, m: i64) -> Result<Rational> {
    f.log_derivative()?.coeff_q(m)
}

/// ℛ_{N,m}(s; f) = 𝒟_{F_{N,−m}(·,s)}(div f), only when div f avoids the cusps.
pub fn r_numeric(
    level: u64,
    m: u64,
    f: &FormExpression,
    params: EvalParams,
) -> Result<PairingResult> {
    let d = f.at_level(level)?.divisor()?;
    if d.has_cusp_support() {
        return Err(Error::MissingCuspValue(
            "div f meets a cusp, where F_{N,-m}(·, s) has no assigned value".into(),
        ));
    }
    pair(&PointEvaluator::niebur(level, m, params), &d)
}

/// ℛ_{N,m}(s; ·) on an explicit cusp-free divisor, with the truncation
/// estimates of the Poincaré series weighted by |n_z|.
pub fn r_numeric_estimate(
    level: u64,
    m: u64,
    d: &Divisor,
    params: EvalParams,
) -> Result<PointValue> {
    if d.level() != level {
        return Err(Error::UnsupportedParameter(
            "divisor level differs from N".into(),
        ));
    }
    if d.has_cusp_support() {
        return Err(Error::MissingCuspValue(
            "the divisor meets a cusp, where F_{N,-m}(·, s) has no assigned value".into(),
        ));
    }
    let p = bits_for_digits(20);
    let mut points: Vec<((f64, f64), Rational)> = Vec::new();
    for (key, c) in d.interior() {
        points.push((d.key_point(key).to_f64(), c.clone()));
    }
    for (jc, c) in d.fibers() {
        points.push((
            j_inverse(&Complex::real(Real::from_rational(jc, p))).to_f64(),
            c.clone(),
        ));
    }
    for (pt, c) in d.numeric_terms() {
        points.push((pt.z.to_f64(), c.clone()));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for ((x, y), c) in points {
        let v = niebur_value(level, m, Complex64::new(x, y), &params)?;
        let w = c.to_f64().unwrap_or(f64::NAN);
        value += v.value * w;
        error += v.error * w.abs();
    }
    Ok(PointValue { value, error })
}

/// Result record of one identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub exact: bool,
    /// Absolute or relative bound for numeric checks.
    pub tolerance: Option<f64>,
    pub passed: bool,
}

impl EvalReport {
    pub fn exact(name: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        EvalReport {
            name: name.into(),
            lhs: format_rational(lhs),
            rhs: format_rational(rhs),
            exact: true,
            tolerance: None,
            passed: lhs == rhs,
        }
    }

    /// A comparison of two exact objects rendered as text; `passed` is supplied.
    pub fn exact_text(name: impl Into<String>, lhs: String, rhs: String, passed: bool) -> Self {
        EvalReport {
            name: name.into(),
            lhs,
            rhs,
            exact: true,
            tolerance: None,
            passed,
        }
    }

    pub fn numeric(
        name: impl Into<String>,
        lhs: String,
        rhs: String,
        diff: f64,
        tolerance: f64,
    ) -> Self {
        EvalReport {
            name: name.into(),
            lhs,
            rhs,
            exact: false,
            tolerance: Some(tolerance),
            passed: diff <= tolerance,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "exact": self.exact,
            "tolerance": self.tolerance.map(|t| format!("{t:e}")),
            "passed": self.passed,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |k: &str| Error::Parse(format!("report JSON: bad {k}"));
        let s = |k: &str| {
            v.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| bad(k))
        };
        let b = |k: &str| v.get(k).and_then(Value::as_bool).ok_or_else(|| bad(k));
        let tolerance = match v.get("tolerance") {
            None | Some(Value::Null) => None,
            Some(t) => Some(
                t.as_str()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("tolerance"))?,
            ),
        };
        Ok(EvalReport {
            name: s("name")?,
            lhs: s("lhs")?,
            rhs: s("rhs")?,
            exact: b("exact")?,
            tolerance,
            passed: b("passed")?,
        })
    }
}

/// Coeff_{q^m}(Θg/g) for g = f|*T(p) against Coeff_{q^{pm}}(Θf/f) + p·Coeff_{q^{m/p}}(Θf/f).
pub fn verify_equivariance(p: u64, m: u64, f: &FormExpression, level: u64) -> Result<EvalReport> {
    if !crate::arith::is_prime(p) {
        return Err(Error::UnsupportedParameter(format!("{p} is not prime")));
    }
    if level.is_multiple_of(p) {
        return Err(Error::UnsupportedParameter(format!(
            "p = {p} divides N = {level}"
        )));
    }
    let f = f.at_level(level.max(f.level()))?;
    let o = probe_order(&f)?;
    let g = hecke_multiplicative(&f, p, level, o * (p as i64 + 1) + m as i64 + 1)?;
    let og = probe_order(&g)?;
    let lhs = log_coeff(&g.qexp(og + m as i64 + 1)?, m as i64)?;
    let fs = f.qexp(o + (p * m) as i64 + 1)?;
    let mut rhs = log_coeff(&fs, (p * m) as i64)?;
    if m.is_multiple_of(p) {
        rhs += int(p as i64) * log_coeff(&fs, (m / p) as i64)?;
    }
    Ok(EvalReport::exact(
        format!("equivariance p={p} m={m} f={f} N={level}"),
        &lhs,
        &rhs,
    ))
}

/// 𝒟_F(T(n)D) against 𝒟_{F|₀T(n)}(D), the latter by summing F over the images αz.
pub fn verify_prop_divisor_sums(
    n: u64,
    f: &PointEvaluator,
    d: &Divisor,
    level: u64,
    tolerance: f64,
) -> Result<EvalReport> {
    if d.level() != level || f.level() != level {
        return Err(Error::UnsupportedParameter(
            "evaluator, divisor and N must share the level".into(),
        ));
    }
    let lhs = pair(f, &hecke_divisor(n, d)?)?;
    let reps = left_coset_reps(level, n)?;
    let p = f.precision();
    let mut rhs = Complex::zero(p);
    let mut add =
        |coeff: &Rational, v: Complex| rhs = &rhs + &v.scale(&Real::from_rational(coeff, p));
    for (class, c) in d.cusp_terms() {
        let cusp = class.representative(level);
        for a in &reps {
            add(c, f.cusp_value(&cusp.act(a))?);
        }
    }
    let mut interior: Vec<(Complex, Rational)> = Vec::new();
    for (key, c) in d.interior() {
        interior.push((d.key_point(key).to_complex(p), c.clone()));
    }
    for (jc, c) in d.fibers() {
        interior.push((
            j_inverse(&Complex::real(Real::from_rational(jc, p))),
            c.clone(),
        ));
    }
    for (pt, c) in d.numeric_terms() {
        interior.push((
            Complex::new(pt.z.re.with_precision(p), pt.z.im.with_precision(p)),
            c.clone(),
        ));
    }
    for (z, c) in &interior {
        for a in &reps {
            add(c, f.eval(&mobius(z, a))?);
        }
    }
    let scale = 1.0 + lhs.value.abs().to_f64();
    let diff = (&lhs.value - &rhs).abs().to_f64() / scale;
    let show = |z: &Complex| {
        format!(
            "{} + {}i",
            z.re.to_string_digits(30),
            z.im.to_string_digits(30)
        )
    };
    Ok(EvalReport::numeric(
        format!("divisor-hecke n={n} F={} N={level}", f.label()),
        show(&lhs.value),
        show(&rhs),
        diff,
        tolerance,
    ))
}

/// Exact Θ-normalized comparison of two q-series on their common precision.
pub fn series_report(
    name: impl Into<String>,
    lhs: &crate::series::QSeries,
    rhs: &crate::series::QSeries,
) -> EvalReport {
    let ok = lhs.agrees_with(rhs) && !lhs.sub(rhs).coeffs().iter().any(|c| !c.is_zero());
    EvalReport::exact_text(name, lhs.to_string(), rhs.to_string(), ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_rational, rat};
    use crate::curve::HeegnerPoint;
    use crate::forms::parse_expression;

    fn near(z: &Complex, re: f64, tol: f64) -> bool {
        (z.re.to_f64() - re).abs() < tol && z.im.to_f64().abs() < tol
    }

    #[test]
    fn pairing_examples() {
        let e4 = parse_expression("E4").unwrap();
        let r = pair(&PointEvaluator::jn(1, 40), &e4.divisor().unwrap()).unwrap();
        assert!(near(&r.value, -240.0, 1e-25));
        let d =
            Divisor::point(&HeegnerPoint::I, 1, rat(1, 1)).sub(&Divisor::infinity(1, rat(1, 1)));
        let r = pair(&PointEvaluator::jn(1, 40), &d).unwrap();
        assert!(near(&r.value, 984.0, 1e-25));
        assert_eq!(r.breakdown.len(), 2);
        let one = pair(&PointEvaluator::constant(1, rat(1, 1)), &d).unwrap();
        assert_eq!(one.exact, Some(rat(0, 1)));
    }

    #[test]
    fn missing_cusp_value() {
        let f = PointEvaluator::new(1, "zero", 20, |z| Ok(Complex::zero(z.precision())));
        let d = Divisor::infinity(1, rat(1, 1));
        assert!(matches!(pair(&f, &d), Err(Error::MissingCuspValue(_))));
        let delta = parse_expression("Delta").unwrap();
        let params = EvalParams::new(10, 1.5).unwrap();
        assert!(matches!(
            r_numeric(1, 1, &delta, params),
            Err(Error::MissingCuspValue(_))
        ));
    }

    #[test]
    fn bko_examples() {
        let e4 = parse_expression("E4").unwrap();
        let v = bko_pairing(2, &e4, 40).unwrap();
        assert!(near(&v.value, 53280.0, 1e-20));
        let delta = parse_expression("Delta").unwrap();
        assert!(near(
            &bko_pairing(1, &delta, 40).unwrap().value,
            24.0,
            1e-25
        ));
        assert_eq!(r_at_s1(1, 1, &e4).unwrap(), int(-240));
        assert_eq!(r_at_s1(1, 2, &e4).unwrap(), int(53280));
        assert_eq!(r_at_s1(1, 1, &delta).unwrap(), int(24));
    }

    #[test]
    fn equivariance_examples() {
        let e4 = parse_expression("E4").unwrap();
        let r = verify_equivariance(2, 1, &e4, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, "-53280/1");
        let r = verify_equivariance(3, 1, &e4, 1).unwrap();
        assert_eq!((r.lhs.as_str(), r.passed), ("12288960/1", true));
        assert!(verify_equivariance(2, 2, &e4, 1).unwrap().passed);
        assert!(verify_equivariance(4, 1, &e4, 1).is_err());
    }

    #[test]
    fn divisor_sum_examples() {
        let d = Divisor::point(&HeegnerPoint::I, 1, rat(1, 1));
        let r = verify_prop_divisor_sums(2, &PointEvaluator::jn(1, 40), &d, 1, 1e-25).unwrap();
        assert!(r.passed, "{r:?}");
        let c = PointEvaluator::constant(1, rat(1, 1));
        let e4 = parse_expression("E4").unwrap().divisor().unwrap();
        let r = verify_prop_divisor_sums(3, &c, &e4, 1, 1e-25).unwrap();
        assert!(r.passed);
        let lhs = pair(&c, &hecke_divisor(3, &e4).unwrap()).unwrap();
        assert_eq!(lhs.exact, Some(parse_rational("4/3").unwrap()));
    }

    #[test]
    fn report_json_round_trip() {
        let r = EvalReport::numeric("x", "1".into(), "1.0".into(), 0.0, 1e-3);
        assert_eq!(EvalReport::from_json(&r.to_json()).unwrap(), r);
    }
}
