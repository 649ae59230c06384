//! Exact scalar arithmetic: rationals, elementary number theory, rational
//! polynomials and cyclotomic fields.

pub mod cyclotomic;
pub mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use cyclotomic::Cyclotomic;
pub use poly::Poly;

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `"num/den"` with the denominator always written, e.g. `"-36882000/691"`, `"5/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"n/d"` or a bare integer `"n"`. Accepts the Unicode minus sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match cleaned.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = cleaned.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `r^e` for a possibly negative exponent.
pub fn rat_pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| num_traits::pow(BigInt::from(d), k as usize))
        .sum()
}

pub fn sigma1(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Prime factorisation as `(p, e)` pairs, ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

/// Index of Γ₀(N) in SL₂(ℤ) (equivalently of its image in PSL₂(ℤ)).
pub fn gamma0_index(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p + 1))
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m` (m >= 1), if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs_rat(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        let r = parse_rational("\u{2212}36882000/691").unwrap();
        assert_eq!(format_rational(&r), "-36882000/691");
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&int(0)), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn number_theory_basics() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sigma1(4), 7);
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(euler_phi(12), 4);
        assert_eq!(gamma0_index(4), 6);
        assert_eq!(gamma0_index(2), 3);
        assert_eq!(gamma0_index(1), 1);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
