use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, gcd};

/// Integer 2×2 matrix (a b; c d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("matrix entry overflow")
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const S: Matrix2 = Matrix2 {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    pub const T: Matrix2 = Matrix2 {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn upper(a: i64, b: i64, d: i64) -> Self {
        Matrix2 { a, b, c: 0, d }
    }

    pub fn det(&self) -> i64 {
        narrow(self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128)
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let (a, b, c, d) = (
            self.a as i128,
            self.b as i128,
            self.c as i128,
            self.d as i128,
        );
        let (e, f, g, h) = (o.a as i128, o.b as i128, o.c as i128, o.d as i128);
        Matrix2 {
            a: narrow(a * e + b * g),
            b: narrow(a * f + b * h),
            c: narrow(c * e + d * g),
            d: narrow(c * f + d * h),
        }
    }

    /// Adjugate (d −b; −c a); equals det·inverse.
    pub fn adj(&self) -> Matrix2 {
        Matrix2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Matrix2 {
        debug_assert_eq!(self.det(), 1);
        self.adj()
    }

    pub fn neg(&self) -> Matrix2 {
        Matrix2 {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn scale(&self, k: i64) -> Matrix2 {
        Matrix2 {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
        }
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), gcd(self.c, self.d))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c == 0
    }

    /// Membership in Γ₀(N): determinant one and N | c.
    pub fn in_gamma0(&self, n: u64) -> bool {
        self.det() == 1 && self.c.rem_euclid(n as i64) == 0
    }

    /// Membership in Δ_N: positive determinant, gcd(a, N) = 1 and N | c.
    pub fn in_delta(&self, n: u64) -> bool {
        self.det() > 0 && gcd(self.a, n as i64) == 1 && self.c.rem_euclid(n as i64) == 0
    }

    pub fn pow(&self, e: u32) -> Matrix2 {
        (0..e).fold(Matrix2::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Some matrix in SL₂(ℤ) with bottom row (c, d); requires gcd(c, d) = 1.
    pub fn complete_bottom_row(c: i64, d: i64) -> Matrix2 {
        let (g, x, y) = ext_gcd(d, c);
        assert_eq!(g, 1, "bottom row ({c}, {d}) is not primitive");
        // a d − b c = 1 with a = x, b = −y
        Matrix2 { a: x, b: -y, c, d }
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_identities() {
        let m = Matrix2::new(2, 3, 5, 7);
        assert_eq!(m.det(), -1);
        assert_eq!(m.mul(&m.adj()), Matrix2::IDENTITY.scale(m.det()));
        assert_eq!(Matrix2::S.pow(2), Matrix2::IDENTITY.neg());
        let g = Matrix2::complete_bottom_row(6, 35);
        assert_eq!(g.det(), 1);
        assert_eq!((g.c, g.d), (6, 35));
        assert!(Matrix2::new(1, 0, 4, 1).in_gamma0(2));
        assert!(!Matrix2::S.in_gamma0(2));
    }
}
