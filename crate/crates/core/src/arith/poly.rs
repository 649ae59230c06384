//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, other: &Poly) -> (Poly, Poly) {
        let dn = other.degree().expect("polynomial division by zero");
        let lead_inv = other.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dn] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * b;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dn);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, other: &Poly) -> Poly {
        self.div_rem(other).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(Rational::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Square-free decomposition (Yun): monic factors `(g, m)` with
    /// `self = lc · Π g^m`, each `g` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() != Some(0) {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Primitive integer polynomial with positive leading coefficient and the
    /// same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in &mut ints {
            *c /= &g;
        }
        ints
    }

    /// Approximate complex roots (Aberth iteration in f64), used as seeds for
    /// exact or high-precision refinement.
    pub fn approx_roots(&self) -> Vec<(f64, f64)> {
        let n = match self.degree() {
            Some(n) if n > 0 => n,
            _ => return Vec::new(),
        };
        let m = self.monic();
        let c: Vec<f64> = m.coeffs.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
        let radius = 1.0 + c[..n].iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let mut z: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
                (radius * t.cos() * 0.5, radius * t.sin() * 0.5)
            })
            .collect();
        let evalc = |x: (f64, f64)| -> ((f64, f64), (f64, f64)) {
            let mut p = (1.0, 0.0);
            let mut dp = (0.0, 0.0);
            for ci in c[..n].iter().rev() {
                dp = cadd(cmul(dp, x), p);
                p = cadd(cmul(p, x), (*ci, 0.0));
            }
            (p, dp)
        };
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let (p, dp) = evalc(z[i]);
                if p == (0.0, 0.0) {
                    continue;
                }
                let ratio = cdiv(p, dp);
                let mut s = (0.0, 0.0);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        s = cadd(s, cdiv((1.0, 0.0), csub(z[i], *zj)));
                    }
                }
                let w = cdiv(ratio, csub((1.0, 0.0), cmul(ratio, s)));
                if w.0.is_finite() && w.1.is_finite() {
                    z[i] = csub(z[i], w);
                    moved = moved.max((w.0.hypot(w.1)) / (1.0 + z[i].0.hypot(z[i].1)));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }

    /// Exact rational roots of `self` (each listed once), found by rounding
    /// numeric seeds and refining by exact Newton steps.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let sqf: Poly = self
            .squarefree_decomposition()
            .into_iter()
            .fold(Poly::constant(Rational::one()), |acc, (g, _)| &acc * &g);
        let ints = sqf.primitive_integer();
        if ints.len() < 2 {
            return Vec::new();
        }
        let mut roots: Vec<Rational> = Vec::new();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
        }
        let lead = ints.last().unwrap().abs();
        let dens: Vec<u64> = match lead.to_u64() {
            Some(l) if l <= 1_000_000 => super::divisors(l),
            _ => vec![1],
        };
        let d = sqf.derivative();
        for (re, im) in sqf.approx_roots() {
            if im.abs() > 1e-6 * (1.0 + re.abs()) {
                continue;
            }
            for &q in &dens {
                let qr = Rational::from_integer(BigInt::from(q));
                let mut x = round_f64(re * q as f64) / &qr;
                for _ in 0..64 {
                    if sqf.eval(&x).is_zero() {
                        break;
                    }
                    let dx = d.eval(&x);
                    if dx.is_zero() {
                        break;
                    }
                    let next = x.clone() - sqf.eval(&x) / dx;
                    let next = (next * &qr).round() / &qr;
                    if next == x {
                        break;
                    }
                    x = next;
                }
                if sqf.eval(&x).is_zero() {
                    if !roots.contains(&x) {
                        roots.push(x);
                    }
                    break;
                }
            }
        }
        roots.sort();
        roots
    }
}

fn round_f64(x: f64) -> Rational {
    let r = x.round();
    Rational::from_float(r)
        .unwrap_or_else(Rational::zero)
        .round()
}

fn cadd(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 + b.0, a.1 + b.1)
}
fn csub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}
fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*X", format_rational(c))?,
                _ => write!(f, "({})*X^{}", format_rational(c), i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[5, 0, -3, 2, 1]);
        let b = Poly::from_ints(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn squarefree_parts_of_j_cubic() {
        // (X - 1728)(X - 287496)^2
        let p = &Poly::linear_root(&int(1728)) * &Poly::linear_root(&int(287496)).pow(2);
        let sf = p.squarefree_decomposition();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (Poly::linear_root(&int(1728)), 1));
        assert_eq!(sf[1], (Poly::linear_root(&int(287496)), 2));
        assert_eq!(p.rational_roots(), vec![int(1728), int(287496)]);
    }

    #[test]
    fn large_and_fractional_roots() {
        let big = super::super::parse_rational("-262537412640768000").unwrap();
        let p = &Poly::linear_root(&big) * &Poly::from_ints(&[-1, 0, 3]);
        assert_eq!(p.rational_roots(), vec![big]);
        let q = Poly::new(vec![int(-2), int(3)]);
        assert_eq!(q.rational_roots(), vec![super::super::rat(2, 3)]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = Poly::from_ints(&[1, 1, 1]);
        let b = Poly::from_ints(&[-1, 0, 0, 1, 2]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
