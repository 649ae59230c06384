//! Arbitrary-precision real and complex numbers on top of `astro-float`.
//!
//! Every value carries its binary precision; binary operations work at the
//! larger of the two.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::ToPrimitive;

use crate::arith::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary precision giving at least `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32;
    bits.div_ceil(64) * 64
}

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        Real {
            v: BigFloat::from_f64(x, p),
            p,
        }
    }

    pub fn from_i64(x: i64, p: usize) -> Self {
        Real {
            v: BigFloat::from_i64(x, p),
            p,
        }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        let n = Self::parse(&r.numer().to_string(), p);
        let d = Self::parse(&r.denom().to_string(), p);
        &n / &d
    }

    pub fn parse(s: &str, p: usize) -> Self {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc));
        assert!(!v.is_nan(), "invalid decimal {s:?}");
        Real { v, p }
    }

    pub fn pi(p: usize) -> Self {
        Real {
            v: with_cc(|cc| cc.pi(p, RM)),
            p,
        }
    }

    pub fn with_precision(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        let _ = v.set_precision(p, RM);
        Real { v, p }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn abs(&self) -> Self {
        Real {
            v: self.v.abs(),
            p: self.p,
        }
    }

    pub fn sqrt(&self) -> Self {
        Real {
            v: self.v.sqrt(self.p, RM),
            p: self.p,
        }
    }

    pub fn exp(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.exp(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn ln(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.ln(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn sin(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.sin(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn cos(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.cos(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn sinh(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.sinh(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn atan(&self) -> Self {
        Real {
            v: with_cc(|cc| self.v.atan(self.p, RM, cc)),
            p: self.p,
        }
    }

    pub fn powi(&self, n: usize) -> Self {
        Real {
            v: self.v.powi(n, self.p, RM),
            p: self.p,
        }
    }

    pub fn pow(&self, e: &Real) -> Self {
        let p = self.p.max(e.p);
        Real {
            v: with_cc(|cc| self.v.pow(&e.v, p, RM, cc)),
            p,
        }
    }

    pub fn floor(&self) -> Self {
        Real {
            v: self.v.floor(),
            p: self.p,
        }
    }

    pub fn recip(&self) -> Self {
        Real {
            v: self.v.reciprocal(self.p, RM),
            p: self.p,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string_digits(20).parse().unwrap_or(f64::NAN)
    }

    /// Nearest integer, if it fits in an i64.
    pub fn round_i64(&self) -> Option<i64> {
        let half = Real::from_f64(0.5, self.p);
        let f = (self + &half).floor();
        f.to_string_digits(30)
            .parse::<f64>()
            .ok()
            .and_then(|x| x.to_i64())
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_string_digits(&self, digits: u32) -> String {
        let p = bits_for_digits(digits).min(self.p.max(64));
        let mut v = self.v.clone();
        let _ = v.set_precision(p, RM);
        with_cc(|cc| v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                let p = self.p.max(o.p);
                Real {
                    v: self.v.$m(&o.v, p, RM),
                    p,
                }
            }
        }
        impl $tr for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
    };
}
real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            v: -(self.v.clone()),
            p: self.p,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(40))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(40))
    }
}

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        let p = re.precision();
        Complex {
            re,
            im: Real::zero(p),
        }
    }

    pub fn zero(p: usize) -> Self {
        Complex {
            re: Real::zero(p),
            im: Real::zero(p),
        }
    }

    pub fn one(p: usize) -> Self {
        Complex {
            re: Real::one(p),
            im: Real::zero(p),
        }
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex {
            re: Real::from_f64(re, p),
            im: Real::from_f64(im, p),
        }
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    /// e^{self}.
    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex {
            re: &m * &self.im.cos(),
            im: &m * &self.im.sin(),
        }
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut acc = Complex::one(self.precision());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_exp() {
        let p = bits_for_digits(50);
        let pi = Real::pi(p);
        assert!(pi
            .to_string_digits(30)
            .starts_with("3.1415926535897932384626433"));
        let e = Real::one(p).exp();
        assert!(e.to_string_digits(20).starts_with("2.71828182845904523"));
        let z = Complex::new(Real::zero(p), pi.clone()).exp();
        assert!((&z.re + &Real::one(p)).abs() < Real::from_f64(1e-45, p));
    }

    #[test]
    fn rational_conversion() {
        let p = bits_for_digits(40);
        let r = Real::from_rational(&crate::arith::rat(1, 3), p);
        let three = &r * &Real::from_i64(3, p);
        assert!((&three - &Real::one(p)).abs() < Real::from_f64(1e-40, p));
        assert_eq!(Real::from_f64(-2.6, p).round_i64(), Some(-3));
    }
}
