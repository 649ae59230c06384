//! CM points of the upper half-plane as primitive positive definite binary
//! quadratic forms, and their canonical classes on X₀(N).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Matrix2;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::numeric::{Complex, Real};

/// The root z = (−B + √(B² − 4AC)) / 2A in ℍ of A z² + B z + C, stored primitive
/// with A > 0 and B² − 4AC < 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeegnerPoint {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeegnerPoint {
    pub const I: HeegnerPoint = HeegnerPoint { a: 1, b: 0, c: 1 };
    /// ω = e^{2πi/3} = (−1 + √−3)/2.
    pub const OMEGA: HeegnerPoint = HeegnerPoint { a: 1, b: 1, c: 1 };

    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let disc = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        if a == 0 || disc >= 0 {
            return Err(Error::Parse(format!(
                "[{a}, {b}, {c}] is not a positive definite form"
            )));
        }
        let g = gcd(gcd(a, b), c);
        let s = if a < 0 { -g } else { g };
        Ok(HeegnerPoint {
            a: a / s,
            b: b / s,
            c: c / s,
        })
    }

    fn from_i128(a: i128, b: i128, c: i128) -> Self {
        let g = gcd128(gcd128(a, b), c);
        let s = if a < 0 { -g } else { g };
        let n = |x: i128| i64::try_from(x / s).expect("quadratic form overflow");
        HeegnerPoint {
            a: n(a),
            b: n(b),
            c: n(c),
        }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The point `i·√m` for a positive integer m, i.e. the form [1, 0, m].
    pub fn i_sqrt(m: i64) -> Self {
        HeegnerPoint { a: 1, b: 0, c: m }
    }

    /// Image under the Möbius action of α (det α > 0).
    pub fn act(&self, m: &Matrix2) -> HeegnerPoint {
        assert!(m.det() > 0, "Möbius action needs positive determinant");
        let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
        let (fa, fb, fc) = (self.a as i128, self.b as i128, self.c as i128);
        let na = fa * d * d - fb * c * d + fc * c * c;
        let nb = -2 * fa * b * d + fb * (a * d + b * c) - 2 * fc * a * c;
        let nc = fa * b * b - fb * a * b + fc * a * a;
        Self::from_i128(na, nb, nc)
    }

    /// Reduced: −A < B ≤ A ≤ C with B ≥ 0 when A = C, i.e. z lies in
    /// −1/2 ≤ Re z < 1/2, |z| ≥ 1, and Re z ≤ 0 on the unit circle.
    pub fn is_reduced(&self) -> bool {
        -self.a < self.b
            && self.b <= self.a
            && self.a <= self.c
            && (self.a != self.c || self.b >= 0)
    }

    /// Level-one reduction: returns the reduced point z₀ and g ∈ SL₂(ℤ) with g·z = z₀.
    pub fn reduce(&self) -> (HeegnerPoint, Matrix2) {
        let mut f = *self;
        let mut g = Matrix2::IDENTITY;
        loop {
            // translate so that −A < B ≤ A; z ↦ z + t sends B to B − 2At
            let two_a = 2 * f.a;
            let t = (f.b + f.a - 1).div_euclid(two_a);
            if t != 0 {
                let tm = Matrix2::new(1, t, 0, 1);
                f = f.act(&tm);
                g = tm.mul(&g);
            }
            if f.a > f.c || (f.a == f.c && f.b < 0) {
                f = f.act(&Matrix2::S);
                g = Matrix2::S.mul(&g);
                continue;
            }
            debug_assert!(f.is_reduced());
            return (f, g);
        }
    }

    /// Stabiliser of a reduced point in SL₂(ℤ), including −I.
    pub fn stabilizer(&self) -> Vec<Matrix2> {
        debug_assert!(self.is_reduced());
        let mut out = vec![Matrix2::IDENTITY, Matrix2::IDENTITY.neg()];
        if *self == HeegnerPoint::I {
            out.push(Matrix2::S);
            out.push(Matrix2::S.neg());
        } else if *self == HeegnerPoint::OMEGA {
            let u = Matrix2::new(0, -1, 1, 1);
            for k in 1..6 {
                out.push(u.pow(k));
            }
            out.dedup();
        }
        out
    }

    /// Numerical value of z at binary precision `p`.
    pub fn to_complex(&self, p: usize) -> Complex {
        let two_a = Real::from_i64(2 * self.a, p);
        let re = &Real::from_i64(-self.b, p) / &two_a;
        let im = &Real::from_i64(-self.disc(), p).sqrt() / &two_a;
        Complex::new(re, im)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let re = -(self.b as f64) / (2.0 * self.a as f64);
        let im = ((-self.disc()) as f64).sqrt() / (2.0 * self.a as f64);
        (re, im)
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Display for HeegnerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// Normalised element of P¹(ℤ/N): the lexicographically least (uc, ud) mod N
/// over units u.
pub fn p1_label(c: i64, d: i64, n: u64) -> (u64, u64) {
    let n_i = n as i64;
    if n == 1 {
        return (0, 0);
    }
    let mut best: Option<(u64, u64)> = None;
    for u in 1..n_i {
        if gcd(u, n_i) != 1 {
            continue;
        }
        let cand = (
            (u * c).rem_euclid(n_i) as u64,
            (u * d).rem_euclid(n_i) as u64,
        );
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

/// A fixed matrix in SL₂(ℤ) whose bottom row has P¹ label `label`.
pub fn coset_rep(label: (u64, u64), n: u64) -> Matrix2 {
    if n == 1 {
        return Matrix2::IDENTITY;
    }
    let n_i = n as i64;
    let c = label.0 as i64;
    let mut d = label.1 as i64;
    if c == 0 {
        return Matrix2::IDENTITY;
    }
    while gcd(c, d) != 1 {
        d += n_i;
    }
    Matrix2::complete_bottom_row(c, d)
}

/// All of Γ₀(N)\SL₂(ℤ), one matrix per element of P¹(ℤ/N).
pub fn coset_reps_gamma0(n: u64) -> Vec<Matrix2> {
    let mut labels = Vec::new();
    for c in 0..n.max(1) {
        for d in 0..n.max(1) {
            if gcd(gcd(c as i64, d as i64), n as i64) != 1 && n != 1 {
                continue;
            }
            labels.push(p1_label(c as i64, d as i64, n));
        }
    }
    labels.sort();
    labels.dedup();
    labels.into_iter().map(|l| coset_rep(l, n)).collect()
}

/// Canonical key of a CM point of X₀(N): the P¹ label of its coset together with
/// the reduced form of its SL₂(ℤ)-orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointKey {
    pub label: (u64, u64),
    pub form: HeegnerPoint,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub key: PointKey,
    /// Canonical representative in ℍ of the Γ₀(N)-orbit.
    pub point: HeegnerPoint,
    /// δ ∈ Γ₀(N) with δ·z = point.
    pub witness: Matrix2,
    /// ω_{Γ₀(N)}(z) ∈ {1, 2, 3}.
    pub period: u32,
}

/// Reduces `z` to its canonical Γ₀(N)-representative.
pub fn reduce_point(z: &HeegnerPoint, n: u64) -> Reduction {
    let (z0, g) = z.reduce();
    let h = g.inverse_sl2();
    let stab = z0.stabilizer();
    let mut best: Option<((u64, u64), Matrix2)> = None;
    let mut fixing = 0;
    for s in &stab {
        let hs = h.mul(s);
        let lab = p1_label(hs.c, hs.d, n);
        if best.as_ref().is_none_or(|(b, _)| lab < *b) {
            best = Some((lab, *s));
        }
        let conj = hs.mul(&h.inverse_sl2());
        if conj.c.rem_euclid(n as i64) == 0 {
            fixing += 1;
        }
    }
    let (label, sigma) = best.unwrap();
    let r = coset_rep(label, n);
    let point = z0.act(&r);
    // r = δ h σ  ⇒  δ = r σ⁻¹ h⁻¹
    let witness = r.mul(&sigma.inverse_sl2()).mul(&g);
    Reduction {
        key: PointKey { label, form: z0 },
        point,
        witness,
        period: fixing / 2,
    }
}

/// ω_{Γ₀(N)}(z).
pub fn period(z: &HeegnerPoint, n: u64) -> u32 {
    reduce_point(z, n).period
}

/// Canonical points of X₀(N) lying over the level-one point `z0` (reduced).
pub fn points_over(z0: &HeegnerPoint, n: u64) -> Vec<Reduction> {
    let mut out: Vec<Reduction> = Vec::new();
    for r in coset_reps_gamma0(n) {
        let red = reduce_point(&z0.act(&r), n);
        if !out.iter().any(|o| o.key == red.key) {
            out.push(red);
        }
    }
    out.sort_by_key(|r| r.key);
    out
}

/// Parses "[A,B,C]" or "A,B,C".
pub fn parse_point(s: &str) -> Result<HeegnerPoint> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<i64> = t
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad point {s:?}, expected [A,B,C]")))?;
    if parts.len() != 3 {
        return Err(Error::Parse(format!("bad point {s:?}, expected [A,B,C]")));
    }
    HeegnerPoint::new(parts[0], parts[1], parts[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_examples() {
        let i = HeegnerPoint::I;
        assert_eq!(
            i.act(&Matrix2::upper(2, 0, 1)),
            HeegnerPoint::new(1, 0, 4).unwrap()
        );
        assert_eq!(
            i.act(&Matrix2::upper(1, 1, 2)),
            HeegnerPoint::new(2, -2, 1).unwrap()
        );
        assert_eq!(
            i.act(&Matrix2::upper(1, 0, 2)),
            HeegnerPoint::new(4, 0, 1).unwrap()
        );
    }

    #[test]
    fn level_one_reduction() {
        let (z, g) = HeegnerPoint::new(4, 0, 1).unwrap().reduce();
        assert_eq!(z, HeegnerPoint::new(1, 0, 4).unwrap());
        assert_eq!(g.det(), 1);
        let (z, _) = HeegnerPoint::new(2, -2, 1).unwrap().reduce();
        assert_eq!(z, HeegnerPoint::I);
        let shifted = HeegnerPoint::OMEGA.act(&Matrix2::new(1, 17, 0, 1));
        assert_eq!(shifted.reduce().0, HeegnerPoint::OMEGA);
        // ω + 1 is on the excluded boundary
        let w1 = HeegnerPoint::OMEGA.act(&Matrix2::T);
        assert!(!w1.is_reduced());
        assert_eq!(w1.reduce().0, HeegnerPoint::OMEGA);
    }

    #[test]
    fn periods() {
        assert_eq!(period(&HeegnerPoint::I, 1), 2);
        assert_eq!(period(&HeegnerPoint::OMEGA, 1), 3);
        assert_eq!(period(&HeegnerPoint::i_sqrt(4), 1), 1);
        assert_eq!(period(&HeegnerPoint::I, 2), 1);
        assert_eq!(period(&HeegnerPoint::new(2, -2, 1).unwrap(), 2), 2);
        assert_eq!(period(&HeegnerPoint::OMEGA, 3), 1);
    }

    #[test]
    fn level_two_keeps_halves_apart() {
        let a = reduce_point(&HeegnerPoint::new(4, 0, 1).unwrap(), 2);
        let b = reduce_point(&HeegnerPoint::i_sqrt(4), 2);
        assert_ne!(a.key, b.key);
        let c = reduce_point(&HeegnerPoint::new(2, -2, 1).unwrap(), 2);
        assert_ne!(c.key, reduce_point(&HeegnerPoint::I, 2).key);
    }

    #[test]
    fn witness_maps_to_canonical_point() {
        for n in [1, 2, 3, 4, 6] {
            for z in [
                HeegnerPoint::new(4, 0, 1).unwrap(),
                HeegnerPoint::new(7, 3, 5).unwrap(),
                HeegnerPoint::new(2, -2, 1).unwrap(),
            ] {
                let red = reduce_point(&z, n);
                assert!(red.witness.in_gamma0(n), "{} not in Γ0({n})", red.witness);
                assert_eq!(z.act(&red.witness), red.point);
            }
        }
    }

    #[test]
    fn points_over_count_by_orbit_stabiliser() {
        for n in [2u64, 3, 4, 5, 6] {
            let mu = crate::arith::gamma0_index(n);
            for z0 in [
                HeegnerPoint::I,
                HeegnerPoint::OMEGA,
                HeegnerPoint::i_sqrt(2),
            ] {
                let w1 = period(&z0, 1);
                let total: u64 = points_over(&z0, n)
                    .iter()
                    .map(|r| (w1 / r.period) as u64)
                    .sum();
                assert_eq!(total, mu);
            }
        }
    }
}
