//! Level-one weak modular forms as polynomials in j, and the divisors they give.

use num_traits::Zero;

use super::divisor::{NumericPoint, NUMERIC_DIGITS};
use super::{Divisor, HeegnerPoint};
use crate::arith::{int, Poly, Rational};
use crate::error::{Error, Result};
use crate::forms;
use crate::numeric::{bits_for_digits, Complex, Real};
use crate::series::QSeries;

/// The polynomial P with P(j) = f through the precision of f.
pub fn weight0_to_j_polynomial(f: &QSeries) -> Result<Poly> {
    let f = f.integral_projection().map_err(|e| {
        Error::NotPolynomialInJ(format!("not a series in integral powers of q: {e}"))
    })?;
    if f.abs_precision() < 1 {
        return Err(Error::PrecisionExhausted(
            "the constant term is needed to recognise a polynomial in j".into(),
        ));
    }
    let m = (-f.order()).max(0);
    let jj = forms::j(f.abs_precision() + m)?;
    let mut powers = vec![QSeries::one((f.abs_precision() + m + 1) as usize)];
    for k in 1..=m as usize {
        let next = powers[k - 1].mul(&jj);
        powers.push(next);
    }
    let mut coeffs = vec![Rational::zero(); m as usize + 1];
    let mut r = f.clone();
    for k in (0..=m).rev() {
        let c = r.coeff_q(-k)?;
        if !c.is_zero() {
            r = r.sub(&powers[k as usize].scale(&c));
            coeffs[k as usize] = c;
        }
    }
    if !r.is_zero() {
        return Err(Error::NotPolynomialInJ(format!(
            "remainder {} survives after removing the principal part",
            r
        )));
    }
    Ok(Poly::new(coeffs))
}

/// Divisor on X₀(1) of a weight-k form f = E4^a·E6^b·Δ^ℓ·P(j) holomorphic on ℍ.
pub fn level_one_divisor(f: &QSeries, weight: i64) -> Result<Divisor> {
    if weight % 2 != 0 {
        return Err(Error::UnsupportedWeightParity(weight));
    }
    let (a, b) = match weight.rem_euclid(12) {
        0 => (0, 0),
        2 => (2, 1),
        4 => (1, 0),
        6 => (0, 1),
        8 => (2, 0),
        _ => (1, 1),
    };
    let ell = (weight - 4 * a - 6 * b) / 12;
    let p = f.abs_precision() + ell.abs() + 4;
    let mut base = forms::delta(p)?.pow(ell)?;
    if a > 0 {
        base = base.mul(&forms::eisenstein(4, p)?.pow(a)?);
    }
    if b > 0 {
        base = base.mul(&forms::eisenstein(6, p)?.pow(b)?);
    }
    let poly = weight0_to_j_polynomial(&f.div(&base)?)?;
    let deg = poly
        .degree()
        .ok_or_else(|| Error::UnknownDivisor("the zero form has no divisor".into()))?;
    let mut d = Divisor::zero(1);
    if a > 0 {
        d.add_point(&HeegnerPoint::OMEGA, Rational::new(a.into(), 3.into()));
    }
    if b > 0 {
        d.add_point(&HeegnerPoint::I, Rational::new(b.into(), 2.into()));
    }
    d = d.add(&Divisor::infinity(1, int(ell - deg as i64)));
    d = d.add(&j_polynomial_zeros(&poly));
    Ok(d)
}

/// Σ mult·[z] over the roots j(z) of P: exact for rational roots, numeric otherwise.
pub fn j_polynomial_zeros(poly: &Poly) -> Divisor {
    let mut d = Divisor::zero(1);
    for (factor, mult) in poly.squarefree_decomposition() {
        let mult = int(mult as i64);
        let mut rest = factor;
        for r in rest.rational_roots() {
            d = d.add(&Divisor::j_fiber(&r, mult.clone()));
            rest = rest.div_rem(&Poly::linear_root(&r)).0;
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        for seed in rest.approx_roots() {
            let root = refine_root(&rest, seed);
            d = d.add(&Divisor::numeric_point(
                NumericPoint::from_j(&root),
                mult.clone(),
            ));
        }
    }
    d
}

fn refine_root(poly: &Poly, seed: (f64, f64)) -> Complex {
    let p = bits_for_digits(NUMERIC_DIGITS + 8);
    let coeffs: Vec<Real> = poly
        .coeffs()
        .iter()
        .map(|c| Real::from_rational(c, p))
        .collect();
    let dcoeffs: Vec<Real> = poly
        .derivative()
        .coeffs()
        .iter()
        .map(|c| Real::from_rational(c, p))
        .collect();
    let horner = |cs: &[Real], x: &Complex| {
        let mut acc = Complex::zero(p);
        for c in cs.iter().rev() {
            acc = &(&acc * x) + &Complex::real(c.clone());
        }
        acc
    };
    let mut x = Complex::from_f64(seed.0, seed.1, p);
    let eps = Real::from_f64(10f64.powi(-(NUMERIC_DIGITS as i32) - 4), p);
    for _ in 0..200 {
        let step = &horner(&coeffs, &x) / &horner(&dcoeffs, &x);
        x = &x - &step;
        if step.abs() <= &eps * &(&Real::one(p) + &x.abs()) {
            break;
        }
    }
    x
}
