//! High-precision values of q-series, Eisenstein series and j at points of ℍ.

use num_complex::Complex64;
use num_traits::Zero;

use super::real::{Complex, Real};
use crate::arith::{sigma, Rational};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// e^{2πiz}.
pub fn q_of(z: &Complex) -> Complex {
    let p = z.precision();
    let two_pi = &Real::pi(p) * &Real::from_i64(2, p);
    let modulus = (-(&two_pi * &z.im)).exp();
    let angle = &two_pi * &z.re;
    Complex::new(&modulus * &angle.cos(), &modulus * &angle.sin())
}

/// Moves z into the standard fundamental domain −1/2 ≤ Re z < 1/2, |z| ≥ 1.
pub fn reduce_numeric(z: &Complex) -> Complex {
    let p = z.precision();
    let half = Real::from_f64(0.5, p);
    let one = Real::one(p);
    let mut w = z.clone();
    for _ in 0..10_000 {
        let shift = (&w.re + &half).floor();
        w.re = &w.re - &shift;
        if w.norm_sqr() < one {
            w = -&w.recip();
        } else {
            break;
        }
    }
    w
}

/// Σ c_m q^m for an integral-grid rational series, ignoring the O-term.
pub fn eval_qseries(f: &QSeries, q: &Complex) -> Result<Complex> {
    if f.denom() != 1 {
        return Err(Error::UnsupportedParameter(
            "numeric evaluation needs an integral exponent grid".into(),
        ));
    }
    let p = q.precision();
    let mut acc = Complex::zero(p);
    if f.is_zero() {
        return Ok(acc);
    }
    let start = f.order();
    let mut qp = if start >= 0 {
        q.powi(start as u64)
    } else {
        q.recip().powi((-start) as u64)
    };
    for c in f.coeffs() {
        if !c.is_zero() {
            acc = &acc + &qp.scale(&Real::from_rational(c, p));
        }
        qp = &qp * q;
    }
    Ok(acc)
}

/// E_k(z) for k ∈ {4, 6, 8, …} from its divisor-sum expansion, summed until the
/// terms fall below the working precision.
pub fn eisenstein_value(k: u32, z: &Complex) -> Complex {
    let p = z.precision();
    let q = q_of(z);
    let qabs = q.abs().to_f64();
    let coeff = crate::forms::eisenstein_constant(k);
    let target = -(p as f64) * std::f64::consts::LN_2 - 10.0;
    let mut acc = Complex::zero(p);
    let mut qn = Complex::one(p);
    let mut n: u64 = 0;
    loop {
        n += 1;
        qn = &qn * &q;
        let s = Rational::from_integer(sigma(k - 1, n));
        acc = &acc + &qn.scale(&Real::from_rational(&s, p));
        let log_term = n as f64 * qabs.ln() + (k as f64) * (n as f64).ln();
        if qabs == 0.0 || (n > 2 && log_term < target) {
            break;
        }
    }
    &Complex::one(p) + &acc.scale(&Real::from_rational(&coeff, p))
}

/// j(z) = 1728·E4³/(E4³ − E6²), evaluated after reduction to the fundamental domain.
pub fn j_value(z: &Complex) -> Complex {
    let w = reduce_numeric(z);
    let p = w.precision();
    let e4 = eisenstein_value(4, &w);
    let e6 = eisenstein_value(6, &w);
    let e43 = &(&e4 * &e4) * &e4;
    let den = &e43 - &(&e6 * &e6);
    (&e43 / &den).scale(&Real::from_i64(1728, p))
}

fn j_f64(z: Complex64) -> Complex64 {
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut e6 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..60u64 {
        qn *= q;
        let s3: f64 = crate::arith::divisors(n)
            .iter()
            .map(|&d| (d as f64).powi(3))
            .sum();
        let s5: f64 = crate::arith::divisors(n)
            .iter()
            .map(|&d| (d as f64).powi(5))
            .sum();
        e4 += qn * 240.0 * s3;
        e6 -= qn * 504.0 * s5;
        if qn.norm() < 1e-30 {
            break;
        }
    }
    let e43 = e4 * e4 * e4;
    e43 * 1728.0 / (e43 - e6 * e6)
}

/// A point z of the fundamental domain with j(z) = c, by Newton iteration
/// started from the best of a coarse grid.
pub fn j_inverse(c: &Complex) -> Complex {
    let p = c.precision();
    let (cr, ci) = c.to_f64();
    let target = Complex64::new(cr, ci);
    let mut best = Complex64::new(0.0, 1.0);
    let mut best_err = f64::INFINITY;
    let mut consider = |z: Complex64| {
        if z.im <= 0.0 {
            return;
        }
        let e = (j_f64(z) - target).norm() / (1.0 + target.norm());
        if e < best_err {
            best_err = e;
            best = z;
        }
    };
    if target.norm() > 100.0 {
        // j ≈ 1/q near the cusp
        let lq = -(target.ln());
        consider(lq / Complex64::new(0.0, 2.0 * std::f64::consts::PI));
    }
    for i in 0..=20 {
        for k in 0..=40 {
            let z = Complex64::new(-0.5 + 0.05 * i as f64, 0.85 + 0.08 * k as f64);
            consider(z);
        }
    }
    let mut z = best;
    for _ in 0..100 {
        let h = 1e-7;
        let jz = j_f64(z);
        let dj = (j_f64(z + h) - j_f64(z - h)) / (2.0 * h);
        if dj.norm() == 0.0 {
            break;
        }
        let step = (jz - target) / dj;
        z -= step;
        if step.norm() < 1e-14 {
            break;
        }
    }
    let mut w = Complex::from_f64(z.re, z.im, p);
    let two_pi_i = Complex::new(Real::zero(p), &Real::pi(p) * &Real::from_i64(2, p));
    let eps = Real::from_f64(2f64.powi(-(p as i32) + 16), p);
    for _ in 0..40 {
        let r = reduce_numeric(&w);
        let e4 = eisenstein_value(4, &r);
        let e6 = eisenstein_value(6, &r);
        let jz = j_value(&r);
        let dj = &(&two_pi_i * &(&(-&e6) / &e4)) * &jz;
        if dj.abs().is_zero() {
            break;
        }
        let step = &(&jz - c) / &dj;
        w = &r - &step;
        if step.abs() < eps {
            break;
        }
    }
    reduce_numeric(&w)
}

/// j_n(z) = (j₁|₀T(n))(z) to about `digits` decimal digits.
pub fn jn_value(n: u64, z: &Complex, digits: u32) -> Result<Complex> {
    let p = super::real::bits_for_digits(digits + 10);
    let w = reduce_numeric(&Complex::new(
        z.re.with_precision(p),
        z.im.with_precision(p),
    ));
    let log_q = -2.0 * std::f64::consts::PI * w.im.to_f64();
    // coefficients of j_n grow like exp(4π√(nm))
    let target = -(digits as f64 + 6.0) * std::f64::consts::LN_10;
    let mut terms: i64 = 1;
    while 4.0 * std::f64::consts::PI * ((n as f64) * terms as f64).sqrt() + terms as f64 * log_q
        > target
    {
        terms += 1;
    }
    let series = crate::forms::jn(n, terms + 1)?;
    eval_qseries(&series, &q_of(&w))
}
