//! Elements of cyclotomic fields ℚ(ζ_n) in the power basis 1, ζ, …, ζ^{φ(n)−1}.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::{euler_phi, format_rational, lcm, Rational};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut p = Poly::from_ints(&num);
    for d in super::divisors(n as u64) {
        if d < n as u64 {
            let phi_d = cyclotomic_polynomial(d as u32);
            let (q, r) = p.div_rem(&Poly::from_ints(&phi_d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    let ints: Vec<i64> = p
        .coeffs()
        .iter()
        .map(|c| i64::try_from(c.to_integer()).expect("cyclotomic coefficient overflow"))
        .collect();
    let arc = Arc::new(ints);
    cache.write().unwrap().insert(n, arc.clone());
    arc
}

/// `a` reduced modulo Φ_n, returned with exactly φ(n) entries.
fn reduce(mut a: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..a.len()).rev() {
        if a[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut a[i]);
        for (j, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                a[i - deg + j] -= &c * Rational::from_integer(p.into());
            }
        }
    }
    a.resize(deg, Rational::zero());
    a
}

#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds an element from an arbitrary polynomial in ζ_n (any length).
    pub fn from_poly_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclotomic {
            order,
            coeffs: reduce(coeffs, order),
        }
    }

    pub fn from_rational(r: Rational, order: u32) -> Self {
        Self::from_poly_coeffs(order, vec![r])
    }

    pub fn zero(order: u32) -> Self {
        Self::from_rational(Rational::zero(), order)
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(Rational::one(), order)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_poly_coeffs(order, v)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in ℚ(ζ_m) for a multiple m of the order,
    /// using ζ_n = ζ_m^{m/n}.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            m
        );
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut v = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::from_poly_coeffs(m, v)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.order as u64, other.order as u64) as u32;
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.add(&b);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_poly_coeffs(self.order, out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(r.recip(), self.order));
        }
        let a = Poly::new(self.coeffs.clone());
        let phi = Poly::from_ints(&cyclotomic_polynomial(self.order));
        let (g, s, _) = a.ext_gcd(&phi);
        debug_assert_eq!(g.degree(), Some(0));
        Some(Self::from_poly_coeffs(self.order, s.coeffs().to_vec()))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
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

    /// Field degree φ(n).
    pub fn degree(&self) -> u64 {
        euler_phi(self.order as u64)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.common(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                _ => write!(f, "{}*z{}^{}", format_rational(c), self.order, i)?,
            }
        }
        write!(f, ")")
    }
}
