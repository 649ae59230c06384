//! Truncated Laurent/Puiseux series in q^{1/D} with exact coefficients.
//!
//! A series stores the coefficients it knows, starting at its order. The
//! absolute precision (first unknown exponent numerator) is
//! `order + coeffs.len()`; everything past it is unknown rather than zero.
//! A series with no known nonzero coefficient is `O(q^{order/D})` with an empty
//! coefficient vector.

mod coefficient;
mod json;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use coefficient::Coefficient;
pub use json::{cyclotomic_series_from_json, series_from_json, series_to_json, JsonCoeff};

use crate::arith::{format_rational, lcm, Cyclotomic, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Series<C: Coefficient> {
    ring: C::Ring,
    denom: u64,
    order: i64,
    coeffs: Vec<C>,
}

pub type QSeries = Series<Rational>;
pub type CycSeries = Series<Cyclotomic>;

impl<C: Coefficient> Series<C> {
    /// Builds a series on the grid `(1/denom)·ℤ` whose coefficient at exponent
    /// `(start + i)/denom` is `coeffs[i]`. Leading zeros are stripped.
    pub fn from_coeffs(ring: C::Ring, denom: u64, start: i64, coeffs: Vec<C>) -> Self {
        assert!(denom >= 1, "grid denominator must be positive");
        let lead = coeffs.iter().position(|c| !c.vanishes());
        match lead {
            Some(0) => Series {
                ring,
                denom,
                order: start,
                coeffs,
            },
            Some(k) => Series {
                ring,
                denom,
                order: start + k as i64,
                coeffs: coeffs.into_iter().skip(k).collect(),
            },
            None => Series {
                ring,
                denom,
                order: start + coeffs.len() as i64,
                coeffs: Vec::new(),
            },
        }
    }

    /// `O(q^{abs/denom})`.
    pub fn zero(ring: C::Ring, denom: u64, abs: i64) -> Self {
        Series {
            ring,
            denom,
            order: abs,
            coeffs: Vec::new(),
        }
    }

    /// `c·q^{exp/denom} + O(q^{(exp + precision)/denom})`.
    pub fn monomial(c: C, denom: u64, exp: i64, precision: usize) -> Self {
        let ring = c.ring();
        let mut coeffs = vec![C::zero_in(ring); precision.max(1)];
        coeffs[0] = c;
        Self::from_coeffs(ring, denom, exp, coeffs)
    }

    pub fn ring(&self) -> C::Ring {
        self.ring
    }

    /// Grid denominator D: exponents live in (1/D)·ℤ.
    pub fn denom(&self) -> u64 {
        self.denom
    }

    /// Exponent numerator of the leading term (or of the O-term for zero).
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Number of known coefficients from the order upward.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent numerator of the first unknown coefficient.
    pub fn abs_precision(&self) -> i64 {
        self.order + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Coefficient at exponent `e/D`.
    pub fn coeff(&self, e: i64) -> Result<C> {
        if e >= self.abs_precision() {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of q^({e}/{}) requested but precision ends at {}/{}",
                self.denom,
                self.abs_precision(),
                self.denom
            )));
        }
        if e < self.order {
            return Ok(C::zero_in(self.ring));
        }
        Ok(self.coeffs[(e - self.order) as usize].clone())
    }

    /// Coefficient at the integral exponent `m`.
    pub fn coeff_q(&self, m: i64) -> Result<C> {
        self.coeff(m * self.denom as i64)
    }

    /// Drops every coefficient at exponents ≥ `abs/D`.
    pub fn truncate(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        if abs <= self.order {
            return Self::zero(self.ring, self.denom, abs);
        }
        let mut out = self.clone();
        out.coeffs.truncate((abs - self.order) as usize);
        out
    }

    /// Multiplication by q^{e/D}.
    pub fn shift(&self, e: i64) -> Self {
        let mut out = self.clone();
        out.order += e;
        out
    }

    pub fn lift_ring(&self, ring: C::Ring) -> Self {
        if ring == self.ring {
            return self.clone();
        }
        Series {
            ring,
            denom: self.denom,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.lift_to(ring)).collect(),
        }
    }

    /// Same series on the finer grid `(1/denom)·ℤ`, a multiple of the current one.
    pub fn regrid(&self, denom: u64) -> Self {
        assert!(
            denom.is_multiple_of(self.denom),
            "grid {} does not refine {}",
            denom,
            self.denom
        );
        if denom == self.denom {
            return self.clone();
        }
        let k = (denom / self.denom) as i64;
        if self.is_zero() {
            return Self::zero(self.ring, denom, self.order * k);
        }
        let len = self.coeffs.len() * k as usize;
        let mut coeffs = vec![C::zero_in(self.ring); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Series {
            ring: self.ring,
            denom,
            order: self.order * k,
            coeffs,
        }
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let ring = C::join(self.ring, other.ring);
        let d = lcm(self.denom, other.denom);
        (
            self.lift_ring(ring).regrid(d),
            other.lift_ring(ring).regrid(d),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.denom != other.denom || self.ring != other.ring {
            let (a, b) = self.align(other);
            return a.add(&b);
        }
        let abs = self.abs_precision().min(other.abs_precision());
        let lo = self.order.min(other.order).min(abs);
        let coeffs = (lo..abs)
            .map(|e| {
                let a = self.coeff(e).unwrap();
                let b = other.coeff(e).unwrap();
                a.add(&b)
            })
            .collect();
        Self::from_coeffs(self.ring, self.denom, lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        Series {
            ring: self.ring,
            denom: self.denom,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Self::zero(self.ring, self.denom, self.abs_precision());
        }
        Series {
            ring: self.ring,
            denom: self.denom,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_by(&self, c: &C) -> Self {
        let ring = C::join(self.ring, c.ring());
        let c = c.lift_to(ring);
        let s = self.lift_ring(ring);
        let coeffs = s.coeffs.iter().map(|a| a.mul(&c)).collect();
        Self::from_coeffs(ring, s.denom, s.order, coeffs)
    }

    /// Adds the constant `c` (exact); fails if the constant term is unknown.
    pub fn add_constant(&self, c: &Rational) -> Result<Self> {
        if self.abs_precision() <= 0 {
            return Err(Error::PrecisionExhausted(
                "constant term is beyond the known precision".into(),
            ));
        }
        if Zero::is_zero(c) {
            return Ok(self.clone());
        }
        let abs = self.abs_precision();
        let k = Self::monomial(
            C::from_rational_in(c.clone(), self.ring),
            self.denom,
            0,
            abs as usize,
        );
        Ok(self.add(&k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.denom != other.denom || self.ring != other.ring {
            let (a, b) = self.align(other);
            return a.mul(&b);
        }
        let abs = (self.abs_precision() + other.order).min(other.abs_precision() + self.order);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring, self.denom, abs);
        }
        let order = self.order + other.order;
        let n = (abs - order) as usize;
        let zero = C::zero_in(self.ring);
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.vanishes() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.ring, self.denom, order, out)
    }

    /// Multiplicative inverse; keeps the number of known coefficients.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.leading().ok_or_else(|| {
            Error::NonUnitLeading("division by a series with no known nonzero term".into())
        })?;
        let inv0 = a0
            .inverse()
            .ok_or_else(|| Error::NonUnitLeading("leading coefficient is not invertible".into()))?;
        let n = self.coeffs.len();
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut s = C::zero_in(self.ring);
            for i in 1..=k {
                let ai = &self.coeffs[i];
                if !ai.vanishes() && !b[k - i].vanishes() {
                    s = s.add(&ai.mul(&b[k - i]));
                }
            }
            b.push(s.mul(&inv0).neg());
        }
        Ok(Series {
            ring: self.ring,
            denom: self.denom,
            order: -self.order,
            coeffs: b,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self^k` for any integer k (negative k needs an invertible leading
    /// coefficient). Uses the power recurrence h_n = (1/(n g_0)) Σ ((k+1)i − n) g_i h_{n−i}.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            if k > 0 {
                return Ok(Self::zero(self.ring, self.denom, self.order * k));
            }
            return Err(Error::NonUnitLeading(
                "power of a series with no known nonzero term".into(),
            ));
        }
        let n = self.coeffs.len();
        if k == 0 {
            let mut coeffs = vec![C::zero_in(self.ring); n];
            coeffs[0] = C::one_in(self.ring);
            return Ok(Self::from_coeffs(self.ring, self.denom, 0, coeffs));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let g0 = &self.coeffs[0];
        let g0_inv = g0
            .inverse()
            .ok_or_else(|| Error::NonUnitLeading("leading coefficient is not invertible".into()))?;
        let h0 = if k > 0 {
            pow_coeff(g0, k as u64, self.ring)
        } else {
            pow_coeff(&g0_inv, (-k) as u64, self.ring)
        };
        let mut h: Vec<C> = Vec::with_capacity(n);
        h.push(h0);
        for m in 1..n {
            let mut s = C::zero_in(self.ring);
            for i in 1..=m {
                let gi = &self.coeffs[i];
                if gi.vanishes() || h[m - i].vanishes() {
                    continue;
                }
                let w = (k + 1) * i as i64 - m as i64;
                if w == 0 {
                    continue;
                }
                s = s.add(
                    &gi.mul(&h[m - i])
                        .scale(&Rational::from_integer(BigInt::from(w))),
                );
            }
            let hm = s
                .mul(&g0_inv)
                .scale(&Rational::new(BigInt::one(), BigInt::from(m)));
            h.push(hm);
        }
        Ok(Series {
            ring: self.ring,
            denom: self.denom,
            order: self.order * k,
            coeffs: h,
        })
    }

    /// Θ = q d/dq: multiplies the coefficient of q^{e/D} by e/D.
    pub fn theta(&self) -> Self {
        let d = BigInt::from(self.denom);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.order + i as i64;
                c.scale(&Rational::new(BigInt::from(e), d.clone()))
            })
            .collect();
        Self::from_coeffs(self.ring, self.denom, self.order, coeffs)
    }

    /// Θf / f.
    pub fn log_derivative(&self) -> Result<Self> {
        self.theta().div(self)
    }

    /// Substitutes q ↦ q^a for a positive rational a.
    ///
    /// The result lives on the grid lcm(D, s, sD/gcd(r, sD)) where a = r/s, which
    /// contains the old grid, the denominator of a and every new exponent.
    pub fn rescale(&self, a: &Rational) -> Self {
        assert!(a > &Rational::zero(), "rescale factor must be positive");
        let r = u64::try_from(a.numer()).expect("rescale numerator too large");
        let s = u64::try_from(a.denom()).expect("rescale denominator too large");
        let sd = s * self.denom;
        let minimal = sd / r.gcd(&sd);
        let new_d = lcm(lcm(self.denom, s), minimal);
        // exponent e/D ↦ e·r/(D·s) = e·k/new_d
        let k = (r * new_d / sd) as i64;
        if self.is_zero() {
            return Self::zero(self.ring, new_d, self.order * k);
        }
        let mut coeffs = vec![C::zero_in(self.ring); self.coeffs.len() * k as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Series {
            ring: self.ring,
            denom: new_d,
            order: self.order * k,
            coeffs,
        }
    }

    /// Maps every coefficient through `f` (which must send zero to zero).
    pub fn map_coeffs<F, T>(&self, ring: T::Ring, mut f: F) -> Series<T>
    where
        T: Coefficient,
        F: FnMut(i64, &C) -> T,
    {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| f(self.order + i as i64, c))
            .collect();
        Series::from_coeffs(ring, self.denom, self.order, coeffs)
    }

    /// Multiplies the q^{m/D} coefficient by ζ_n^{jm}.
    pub fn twist(&self, j: i64, n: u32) -> CycSeries
    where
        C: IntoCyclotomic,
    {
        let ring = C::cyclotomic_ring(self.ring, n);
        self.map_coeffs(ring, |e, c| {
            let z = Cyclotomic::zeta_pow(
                ring,
                (j.rem_euclid(n as i64) * e.rem_euclid(n as i64)) * (ring / n) as i64,
            );
            c.to_cyclotomic(ring).mul(&z)
        })
    }

    /// The series as one over ℚ(ζ_n) (lifted into the compositum if needed).
    pub fn to_cyclotomic(&self, n: u32) -> CycSeries
    where
        C: IntoCyclotomic,
    {
        let ring = C::cyclotomic_ring(self.ring, n);
        self.map_coeffs(ring, |_, c| c.to_cyclotomic(ring))
    }

    /// Restriction to integral exponents with rational coefficients; fails if a
    /// known coefficient at a non-integral exponent is nonzero or a surviving
    /// coefficient is irrational.
    pub fn integral_projection(&self) -> Result<QSeries> {
        let d = self.denom as i64;
        let mut out = Vec::new();
        let start = Integer::div_ceil(&self.order, &d);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.order + i as i64;
            if e.rem_euclid(d) != 0 {
                if !c.vanishes() {
                    return Err(Error::NotIntegralSeries(format!(
                        "nonzero coefficient at q^({e}/{d})"
                    )));
                }
                continue;
            }
            let r = c.as_rational().ok_or_else(|| {
                Error::NotIntegralSeries(format!("irrational coefficient {c:?} at q^{}", e / d))
            })?;
            out.push(r);
        }
        let abs = Integer::div_ceil(&self.abs_precision(), &d);
        if out.is_empty() {
            return Ok(QSeries::zero((), 1, abs.max(start)));
        }
        Ok(QSeries::from_coeffs((), 1, start, out))
    }

    /// True if the two series agree on every exponent both know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let diff = self.sub(other);
        diff.is_zero()
    }
}

fn pow_coeff<C: Coefficient>(c: &C, e: u64, ring: C::Ring) -> C {
    let mut acc = C::one_in(ring);
    let mut base = c.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// Coefficients that embed into cyclotomic fields.
pub trait IntoCyclotomic: Coefficient {
    fn cyclotomic_ring(ring: Self::Ring, n: u32) -> u32;
    fn to_cyclotomic(&self, ring: u32) -> Cyclotomic;
}

impl IntoCyclotomic for Rational {
    fn cyclotomic_ring(_: (), n: u32) -> u32 {
        n
    }
    fn to_cyclotomic(&self, ring: u32) -> Cyclotomic {
        Cyclotomic::from_rational(self.clone(), ring)
    }
}

impl IntoCyclotomic for Cyclotomic {
    fn cyclotomic_ring(ring: u32, n: u32) -> u32 {
        lcm(ring as u64, n as u64) as u32
    }
    fn to_cyclotomic(&self, ring: u32) -> Cyclotomic {
        self.lift(ring)
    }
}

impl QSeries {
    /// Rational series on the integral grid from `coeffs[i]` = coefficient of q^{start+i}.
    pub fn from_rationals(start: i64, coeffs: Vec<Rational>) -> Self {
        Self::from_coeffs((), 1, start, coeffs)
    }

    pub fn from_ints(start: i64, coeffs: &[i64]) -> Self {
        Self::from_rationals(
            start,
            coeffs.iter().map(|&c| crate::arith::int(c)).collect(),
        )
    }

    /// The constant `c + O(q^precision)`.
    pub fn constant(c: Rational, precision: usize) -> Self {
        if Zero::is_zero(&c) {
            return Self::zero((), 1, precision as i64);
        }
        Self::monomial(c, 1, 0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::constant(Rational::one(), precision)
    }
}

impl<C: Coefficient> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exp = |e: i64| -> String {
            let r = Rational::new(BigInt::from(e), BigInt::from(self.denom));
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("({})", format_rational(&r))
            }
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            let e = self.order + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let shown = match c.as_rational() {
                Some(r) => format_rational(&r),
                None => format!("{c:?}"),
            };
            if e == 0 {
                write!(f, "{shown}")?;
            } else {
                write!(f, "{shown}*q^{}", exp(e))?;
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", exp(self.abs_precision()))
    }
}

#[cfg(test)]
mod tests;
