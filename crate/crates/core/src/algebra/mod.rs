//! The Hecke algebra R₀(N): formal ℤ-combinations of double cosets
//! Γ₀(N)αΓ₀(N) with α ∈ Δ_N = {(a b; c d) : det > 0, N | c, gcd(a, N) = 1}.

mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};

pub use matrix::Matrix2;

use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};

/// Upper-triangular left coset representatives of Γ₀(N)\Δ_N^{(n)}:
/// (a b; 0 d) with ad = n, gcd(a, N) = 1, 0 ≤ b < d.
///
/// For gcd(n, N) = 1 there are σ₁(n) of them; for a prime p | N they are the
/// p matrices (1 j; 0 p).
pub fn left_coset_reps(level: u64, n: u64) -> Result<Vec<Matrix2>> {
    if level == 0 || n == 0 {
        return Err(Error::UnsupportedParameter(format!(
            "level and determinant must be positive (N = {level}, n = {n})"
        )));
    }
    let mut out = Vec::new();
    for a in divisors(n) {
        if gcd(a as i64, level as i64) != 1 {
            continue;
        }
        let d = n / a;
        for b in 0..d {
            out.push(Matrix2::upper(a as i64, b as i64, d as i64));
        }
    }
    Ok(out)
}

/// Whether Γ₀(N)α = Γ₀(N)β, i.e. αβ⁻¹ ∈ Γ₀(N).
pub fn same_left_coset(alpha: &Matrix2, beta: &Matrix2, level: u64) -> Result<bool> {
    let n = alpha.det();
    if n != beta.det() {
        return Err(Error::DeterminantMismatch(
            alpha.to_string(),
            beta.to_string(),
        ));
    }
    if n <= 0 {
        return Err(Error::NotInDeltaN(format!(
            "{alpha} has non-positive determinant"
        )));
    }
    let m = alpha.mul(&beta.adj());
    let integral = [m.a, m.b, m.c, m.d].iter().all(|x| x % n == 0);
    Ok(integral && (m.c / n).rem_euclid(level as i64) == 0)
}

/// Elementary-divisor label (a, d), a | d, of the double coset containing α.
pub fn double_coset_label(alpha: &Matrix2, level: u64) -> Result<(u64, u64)> {
    if !alpha.in_delta(level) {
        return Err(Error::NotInDeltaN(format!("{alpha} is not in Δ_{level}")));
    }
    let g = alpha.content().unsigned_abs();
    let det = alpha.det() as u64;
    Ok((g, det / g))
}

/// Left coset representatives of the double coset T(a, d) at level N.
pub fn double_coset_reps(a: u64, d: u64, level: u64) -> Result<Vec<Matrix2>> {
    check_label(a, d, level)?;
    Ok(left_coset_reps(level, a * d)?
        .into_iter()
        .filter(|m| m.content().unsigned_abs() == a)
        .collect())
}

fn check_label(a: u64, d: u64, level: u64) -> Result<()> {
    if a == 0 || !d.is_multiple_of(a) || gcd(a as i64, level as i64) != 1 {
        return Err(Error::UnsupportedParameter(format!(
            "T({a},{d}) is not a double coset of level {level}: need a | d and gcd(a, N) = 1"
        )));
    }
    Ok(())
}

/// Canonical form of an upper-triangular matrix in its Γ₀(N) left coset:
/// positive diagonal and 0 ≤ b < d.
fn hermite(m: &Matrix2) -> (i64, i64, i64) {
    debug_assert!(m.is_upper_triangular());
    let m = if m.a < 0 { m.neg() } else { *m };
    (m.a, m.b.rem_euclid(m.d), m.d)
}

/// Element of R₀(N): multiplicities of double cosets T(a, d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    level: u64,
    terms: BTreeMap<(u64, u64), i64>,
}

impl AlgebraElement {
    pub fn zero(level: u64) -> Self {
        AlgebraElement {
            level,
            terms: BTreeMap::new(),
        }
    }

    /// The identity T(1, 1).
    pub fn identity(level: u64) -> Self {
        Self::t(1, 1, level).unwrap()
    }

    /// The double coset T(a, d).
    pub fn t(a: u64, d: u64, level: u64) -> Result<Self> {
        check_label(a, d, level)?;
        let mut e = Self::zero(level);
        e.terms.insert((a, d), 1);
        Ok(e)
    }

    /// T(n) = Σ_{ad = n, a | d, gcd(a, N) = 1} T(a, d).
    pub fn t_n(n: u64, level: u64) -> Self {
        let mut e = Self::zero(level);
        for a in divisors(n) {
            let d = n / a;
            if d.is_multiple_of(a) && gcd(a as i64, level as i64) == 1 {
                e.terms.insert((a, d), 1);
            }
        }
        e
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn mult(&self, a: u64, d: u64) -> i64 {
        self.terms.get(&(a, d)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            *out.terms.entry(k).or_insert(0) += v;
        }
        out.terms.retain(|_, v| *v != 0);
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|v| *v *= k);
        out.terms.retain(|_, v| *v != 0);
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::UnsupportedParameter(format!(
                "levels differ: {} and {}",
                self.level, other.level
            )));
        }
        let mut out = Self::zero(self.level);
        for (&(a, d), &u) in &self.terms {
            for (&(a2, d2), &v) in &other.terms {
                let prod = multiply_double_cosets((a, d), (a2, d2), self.level)?;
                out = out.add(&prod.scale(u * v));
            }
        }
        Ok(out)
    }

    /// Sum of the degrees (number of left cosets) weighted by multiplicity.
    pub fn degree(&self) -> Result<i64> {
        let mut total = 0;
        for (&(a, d), &m) in &self.terms {
            total += m * double_coset_reps(a, d, self.level)?.len() as i64;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&(a, d), &m)| json!({"a": a, "d": d, "mult": m}))
            .collect();
        json!({"N": self.level, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |w: &str| Error::Parse(format!("algebra JSON: bad {w}"));
        let level = v
            .get("N")
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .ok_or_else(|| bad("N"))?;
        let mut out = Self::zero(level);
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("terms"))?
        {
            let a = t.get("a").and_then(Value::as_u64).ok_or_else(|| bad("a"))?;
            let d = t.get("d").and_then(Value::as_u64).ok_or_else(|| bad("d"))?;
            let m = t
                .get("mult")
                .and_then(Value::as_i64)
                .ok_or_else(|| bad("mult"))?;
            out = out.add(&Self::t(a, d, level)?.scale(m));
        }
        Ok(out)
    }
}

/// T(a,d)·T(a',d') by counting products of left coset representatives:
/// m(u·v; w) = #{(i, j) : Γ₀(N)α_iβ_j = Γ₀(N)ξ} for any fixed left coset Γ₀(N)ξ ⊂ w.
pub fn multiply_double_cosets(u: (u64, u64), v: (u64, u64), level: u64) -> Result<AlgebraElement> {
    let left = double_coset_reps(u.0, u.1, level)?;
    let right = double_coset_reps(v.0, v.1, level)?;
    let mut counts: HashMap<(i64, i64, i64), i64> = HashMap::new();
    for x in &left {
        for y in &right {
            *counts.entry(hermite(&x.mul(y))).or_insert(0) += 1;
        }
    }
    let mut per_label: BTreeMap<(u64, u64), Vec<i64>> = BTreeMap::new();
    for (&(a, b, d), &c) in &counts {
        let label = double_coset_label(&Matrix2::upper(a, b, d), level)?;
        per_label.entry(label).or_default().push(c);
    }
    let mut out = AlgebraElement::zero(level);
    for (label, cs) in per_label {
        let cosets = double_coset_reps(label.0, label.1, level)?.len();
        if cs.len() != cosets || cs.iter().any(|&c| c != cs[0]) {
            return Err(Error::UnsupportedParameter(format!(
                "products of T{u:?} and T{v:?} do not fill T{label:?} uniformly at level {level}"
            )));
        }
        out.terms.insert(label, cs[0]);
    }
    Ok(out)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, d), &m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", if m < 0 { " - " } else { " + " })?;
            } else if m < 0 {
                write!(f, "-")?;
            }
            if m.abs() != 1 {
                write!(f, "{}", m.abs())?;
            }
            write!(f, "T({a},{d})")?;
        }
        Ok(())
    }
}

/// Parses "T2", "T(2)", "T(1,4)", "T2,2" style names.
pub fn parse_element(s: &str, level: u64) -> Result<AlgebraElement> {
    let t = s.trim();
    let body = t
        .strip_prefix('T')
        .ok_or_else(|| Error::Parse(format!("bad Hecke element {s:?}")))?
        .trim_start_matches('(')
        .trim_end_matches(')');
    let nums: Vec<u64> = body
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad Hecke element {s:?}")))?;
    match nums.as_slice() {
        [n] if *n > 0 => Ok(AlgebraElement::t_n(*n, level)),
        [a, d] => AlgebraElement::t(*a, *d, level),
        _ => Err(Error::Parse(format!("bad Hecke element {s:?}"))),
    }
}
