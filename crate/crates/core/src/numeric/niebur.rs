//! Niebur–Poincaré series F_{N,−m}(τ, s) = Σ_{γ ∈ Γ∞\Γ₀(N)} φ_m(Im γτ, s) e(−m Re γτ)
//! for real s > 1, in f64.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::bessel::{gamma_f64, i_bessel_f64};
use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};

/// Half-width of the d-window, in units of max(c·v, 1).
const D_WINDOW: f64 = 80.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalParams {
    /// Largest c/N summed.
    pub c_max: u64,
    pub s: f64,
    /// Fail with ConvergenceBudgetExceeded when the error estimate exceeds this.
    pub tolerance: Option<f64>,
}

impl EvalParams {
    pub fn new(c_max: u64, s: f64) -> Result<Self> {
        if c_max < 2 {
            return Err(Error::UnsupportedParameter(
                "truncation C must be at least 2".into(),
            ));
        }
        if !(s > 1.0) {
            return Err(Error::UnsupportedParameter(format!(
                "the series converges only for s > 1, got s = {s}"
            )));
        }
        Ok(EvalParams {
            c_max,
            s,
            tolerance: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointValue {
    pub value: Complex64,
    /// max |S(C) − S(C′)| over C/2 ≤ C′ < C, plus the size of the first
    /// omitted term of the d-tail expansion.
    pub error: f64,
}

impl PointValue {
    pub fn to_json(&self, params: &EvalParams) -> Value {
        json!({
            "value": [format!("{:e}", self.value.re), format!("{:e}", self.value.im)],
            "error": format!("{:e}", self.error),
            "C": params.c_max,
            "s": params.s,
        })
    }
}

/// φ_m(v, s) = 2π√(mv)·I_{s−1/2}(2πmv), or v^s for m = 0.
pub fn phi(m: u64, v: f64, s: f64) -> f64 {
    Kernel::new(m, s).eval(v)
}

struct Kernel {
    m: f64,
    s: f64,
    gamma_nu1: f64,
    /// φ_m(v, s) ≈ small·v^s as v → 0.
    small: f64,
}

impl Kernel {
    fn new(m: u64, s: f64) -> Self {
        let gamma_nu1 = gamma_f64(s + 0.5);
        let m = m as f64;
        let small = if m == 0.0 {
            1.0
        } else {
            2.0 * PI * m.sqrt() * (PI * m).powf(s - 0.5) / gamma_nu1
        };
        Kernel {
            m,
            s,
            gamma_nu1,
            small,
        }
    }

    fn eval(&self, v: f64) -> f64 {
        if self.m == 0.0 {
            return v.powf(self.s);
        }
        2.0 * PI
            * (self.m * v).sqrt()
            * i_bessel_f64(self.s - 0.5, 2.0 * PI * self.m * v, self.gamma_nu1)
    }
}

/// Ramanujan sum c_c(m) = Σ_{d mod c, (d,c)=1} e(md/c).
fn ramanujan(c: u64, m: u64) -> f64 {
    let mut acc = 0.0;
    for d in 1..=c {
        if gcd(d as i64, c as i64) == 1 {
            acc += (2.0 * PI * (m * d % c) as f64 / c as f64).cos();
        }
    }
    acc
}

/// Σ over coprime d of the terms for one c, with the far d-tail replaced by its
/// asymptotic mean.
fn column(level_c: u64, m: u64, tau: Complex64, k: &Kernel) -> (Complex64, f64) {
    let c = level_c as f64;
    let (u, v) = (tau.re, tau.im);
    let x = D_WINDOW * (c * v).max(1.0);
    let lo = (-c * u - x).floor() as i64;
    let hi = (-c * u + x).ceil() as i64;
    let ci = level_c as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for d in lo..=hi {
        if gcd(d, ci) != 1 {
            continue;
        }
        let a = mod_inverse(d.rem_euclid(ci), ci).unwrap_or(0);
        let w = Complex64::new(c * u + d as f64, c * v);
        let y = v / w.norm_sqr();
        // Re γτ = a/c − Re 1/(c(cτ + d))
        let re = a as f64 / c - (1.0 / (c * w)).re;
        let phase = Complex64::from_polar(1.0, -2.0 * PI * m as f64 * re);
        acc += phase * k.eval(y);
    }
    // beyond |x| = X, with x = d + cu: φ ≈ small·(v/(x² + c²v²))^s and the phase
    // e(m/(cx)) pairs to 1 − 2π²m²/(c²x²), both kept to order x^{−2}
    let span = (hi - lo) as f64 / 2.0;
    let s = k.s;
    let second = 2.0 * PI * PI * (m * m) as f64 / (c * c) + s * c * c * v * v;
    let profile = 2.0 * span.powf(1.0 - 2.0 * s) / (2.0 * s - 1.0)
        - 2.0 * second * span.powf(-1.0 - 2.0 * s) / (2.0 * s + 1.0);
    let weight = ramanujan(level_c, m) / c * k.small * v.powf(s);
    let next = 2.0 * second * second * span.powf(-3.0 - 2.0 * s) / (2.0 * s + 3.0);
    (acc + weight * profile, (weight * next).abs())
}

/// F_{N,−m}(τ, s) summed over c = N, 2N, …, C·N, with the error estimated from
/// the spread of the partial sums beyond C/2.
pub fn niebur_value(level: u64, m: u64, tau: Complex64, params: &EvalParams) -> Result<PointValue> {
    if level == 0 {
        return Err(Error::UnsupportedParameter("level must be positive".into()));
    }
    if !(tau.im > 0.0) {
        return Err(Error::UnsupportedParameter(format!(
            "τ = {tau} is not in the upper half-plane"
        )));
    }
    let k = Kernel::new(m, params.s);
    let identity = Complex64::from_polar(1.0, -2.0 * PI * m as f64 * tau.re) * k.eval(tau.im);
    let half = params.c_max / 2;
    let mut full = identity;
    let mut partial = Vec::new();
    let mut window = 0.0;
    for j in 1..=params.c_max {
        let (col, err) = column(j * level, m, tau, &k);
        if j >= half {
            partial.push(full);
        }
        full += col;
        window += err;
    }
    let spread = partial
        .iter()
        .map(|p| (full - p).norm())
        .fold(0.0, f64::max);
    let error = spread + window;
    if let Some(tol) = params.tolerance {
        if error > tol {
            return Err(Error::ConvergenceBudgetExceeded(format!(
                "error estimate {error:e} exceeds tolerance {tol:e} at C = {}",
                params.c_max
            )));
        }
    }
    Ok(PointValue { value: full, error })
}

/// Σ_α F(ατ) over the upper-triangular left coset representatives of T(n),
/// i.e. (F|₀T(n))(τ). Errors add.
pub fn niebur_hecke_value(
    level: u64,
    m: u64,
    n: u64,
    tau: Complex64,
    params: &EvalParams,
) -> Result<PointValue> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for r in crate::algebra::left_coset_reps(level, n)? {
        let w = (tau * r.a as f64 + r.b as f64) / r.d as f64;
        let pv = niebur_value(level, m, w, params)?;
        value += pv.value;
        error += pv.error;
    }
    Ok(PointValue { value, error })
}
