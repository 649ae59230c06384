//! The classical forms used throughout: Eisenstein series, Δ, j, j_n, eta
//! quotients, and symbolic products of them.

mod eta;
mod expr;

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use eta::EtaQuotientSpec;
pub use expr::{parse_expression, Atom, FormExpression};

use crate::arith::{int, sigma, Rational};
use crate::error::{Error, Result};
use crate::series::QSeries;

static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number B_n (with B_1 = −1/2).
pub fn bernoulli(n: usize) -> Rational {
    let cache = BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(b) = cache.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = cache.write().unwrap();
    while table.len() <= n {
        let m = table.len();
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table[n].clone()
}

/// −2k/B_k, the coefficient of Σ σ_{k−1}(n)qⁿ in the normalised E_k.
pub fn eisenstein_constant(k: u32) -> Rational {
    -int(2 * k as i64) / bernoulli(k as usize)
}

fn check_prec(prec: i64) -> Result<()> {
    if prec < 1 {
        return Err(Error::UnsupportedParameter(format!(
            "precision must be at least 1, got {prec}"
        )));
    }
    Ok(())
}

/// E_k = 1 − (2k/B_k) Σ σ_{k−1}(n)qⁿ + O(q^prec).
pub fn eisenstein(k: i64, prec: i64) -> Result<QSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(format!(
            "Eisenstein series need even k ≥ 4, got {k}"
        )));
    }
    check_prec(prec)?;
    let c = eisenstein_constant(k as u32);
    let mut coeffs = vec![Rational::one()];
    for n in 1..prec as u64 {
        coeffs.push(&c * Rational::from_integer(sigma(k as u32 - 1, n)));
    }
    Ok(QSeries::from_rationals(0, coeffs))
}

/// ∏_{n≥1}(1 − qⁿ) + O(q^prec), from the pentagonal number theorem.
pub fn euler_product(prec: i64) -> QSeries {
    let len = prec.max(0) as usize;
    let mut coeffs = vec![Rational::zero(); len];
    if len > 0 {
        coeffs[0] = Rational::one();
    }
    for k in 1i64.. {
        let sign = int(if k % 2 == 0 { 1 } else { -1 });
        let mut any = false;
        for e in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if (e as usize) < len {
                coeffs[e as usize] = sign.clone();
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    QSeries::from_rationals(0, coeffs)
}

/// Δ = q∏(1 − qⁿ)²⁴ + O(q^prec).
pub fn delta(prec: i64) -> Result<QSeries> {
    check_prec(prec)?;
    if prec == 1 {
        return Ok(QSeries::zero((), 1, 1));
    }
    Ok(euler_product(prec - 1).pow(24)?.shift(1))
}

/// Δ(mτ) + O(q^prec).
pub fn delta_shift(m: u64, prec: i64) -> Result<QSeries> {
    if m == 0 {
        return Err(Error::UnsupportedParameter("Δ(mτ) needs m ≥ 1".into()));
    }
    let base = delta(ceil_div(prec, m as i64).max(1) + 1)?;
    Ok(base.rescale(&int(m as i64)).truncate(prec))
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_ceil(&a, &b)
}

/// j = E4³/Δ = q⁻¹ + 744 + 196884q + ⋯ + O(q^prec).
pub fn j(prec: i64) -> Result<QSeries> {
    let p = prec.max(0) + 2;
    let e4 = eisenstein(4, p)?;
    let e43 = e4.mul(&e4).mul(&e4);
    Ok(e43.div(&delta(p + 1)?)?.truncate(prec))
}

/// The normalisation j − 720 = q⁻¹ + 24 + 196884q + ⋯ used for j₁.
pub fn j_shifted(prec: i64) -> Result<QSeries> {
    j(prec)?.add_constant(&int(-720))
}

/// j_n = j₁|₀T(n) = q⁻ⁿ + 24σ₁(n) + O(q).
pub fn jn(n: u64, prec: i64) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::UnsupportedParameter("j_n needs n ≥ 1".into()));
    }
    let need = (prec.max(1) - 1) * n as i64 + 1;
    let base = j_shifted(need.max(1))?;
    Ok(crate::hecke::hecke_additive_formula(&base, 0, n)?.truncate(prec))
}
