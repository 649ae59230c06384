//! Cusps of X₀(N).
//!
//! The class of a/c (gcd(a, c) = 1) is determined by d = gcd(c, N) together with
//! a·(c/d) modulo gcd(d, N/d); i∞ = 1/0 has d = N.

use std::fmt;

use crate::algebra::Matrix2;
use crate::arith::{divisors, gcd, Rational};
use crate::error::{Error, Result};

/// A point of ℙ¹(ℚ): `num/den` in lowest terms with den ≥ 0; i∞ is 1/0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    pub num: i64,
    pub den: i64,
}

impl Cusp {
    pub const INFINITY: Cusp = Cusp { num: 1, den: 0 };

    pub fn new(num: i64, den: i64) -> Self {
        assert!(num != 0 || den != 0, "0/0 is not a cusp");
        let g = gcd(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 || (d == 0 && n < 0) {
            n = -n;
            d = -d;
        }
        Cusp { num: n, den: d }
    }

    pub fn is_infinity(&self) -> bool {
        self.den == 0
    }

    pub fn act(&self, m: &Matrix2) -> Cusp {
        let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
        let (x, y) = (self.num as i128, self.den as i128);
        let nx = a * x + b * y;
        let ny = c * x + d * y;
        let g = {
            let (mut p, mut q) = (nx.abs(), ny.abs());
            while q != 0 {
                let r = p % q;
                p = q;
                q = r;
            }
            p
        };
        Cusp::new(
            i64::try_from(nx / g).expect("cusp overflow"),
            i64::try_from(ny / g).expect("cusp overflow"),
        )
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (!self.is_infinity()).then(|| crate::arith::rat(self.num, self.den))
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Γ₀(N)-class of a cusp: `d = gcd(c, N)` and the unit `x` mod gcd(d, N/d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspClass {
    pub d: u64,
    pub x: u64,
}

impl CuspClass {
    pub fn infinity(n: u64) -> Self {
        CuspClass { d: n, x: 0 }
    }

    pub fn of(cusp: &Cusp, n: u64) -> Self {
        let n_i = n as i64;
        let c = cusp.den.rem_euclid(n_i);
        let d = gcd(if c == 0 { n_i } else { c }, n_i);
        let g = gcd(d, n_i / d);
        let x = if g == 1 {
            0
        } else {
            // a·(c/d) mod g, with c taken as the actual (non-reduced) denominator
            let cd = (cusp.den / d).rem_euclid(g);
            (cusp.num.rem_euclid(g) * cd).rem_euclid(g) as u64
        };
        CuspClass { d: d as u64, x }
    }

    pub fn is_infinity(&self, n: u64) -> bool {
        self.d == n
    }

    /// Width N / gcd(d², N).
    pub fn width(&self, n: u64) -> u64 {
        n / crate::arith::gcd((self.d * self.d) as i64, n as i64) as u64
    }

    /// Canonical representative a/d with the least admissible a ≥ 0 (i∞ for d = N).
    pub fn representative(&self, n: u64) -> Cusp {
        if self.d == n {
            return Cusp::INFINITY;
        }
        let d = self.d as i64;
        let g = gcd(d, n as i64 / d);
        let mut a = 0i64;
        loop {
            if gcd(a, d) == 1 && (g == 1 || a.rem_euclid(g) as u64 == self.x) {
                return Cusp::new(a, d);
            }
            a += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuspInfo {
    pub class: CuspClass,
    pub rep: Cusp,
    pub width: u64,
}

/// Complete system of inequivalent cusps of Γ₀(N): i∞ first, then by increasing d.
pub fn cusps(n: u64) -> Vec<CuspInfo> {
    let mut out = vec![CuspInfo {
        class: CuspClass::infinity(n),
        rep: Cusp::INFINITY,
        width: 1,
    }];
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let g = gcd(d as i64, (n / d) as i64) as u64;
        for x in 0..g.max(1) {
            if g > 1 && gcd(x as i64, g as i64) != 1 {
                continue;
            }
            let class = CuspClass {
                d,
                x: if g == 1 { 0 } else { x },
            };
            out.push(CuspInfo {
                class,
                rep: class.representative(n),
                width: class.width(n),
            });
        }
    }
    out
}

/// Parses "inf", "oo", "a/c" or an integer.
pub fn parse_cusp(s: &str) -> Result<Cusp> {
    let t = s.trim();
    if matches!(t, "inf" | "oo" | "i∞" | "infinity") {
        return Ok(Cusp::INFINITY);
    }
    let bad = || Error::Parse(format!("bad cusp {s:?}"));
    match t.split_once('/') {
        Some((a, c)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let c: i64 = c.trim().parse().map_err(|_| bad())?;
            if a == 0 && c == 0 {
                return Err(bad());
            }
            Ok(Cusp::new(a, c))
        }
        None => Ok(Cusp::new(t.parse().map_err(|_| bad())?, 1)),
    }
}
