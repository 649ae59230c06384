//! Hecke operators on q-expansions: the additive weight-k operator (by the
//! coefficient formula and by summing slashes over coset representatives) and
//! the multiplicative operator f ↦ ∏ f|α_i.

use num_traits::{One, Zero};

use crate::algebra::{double_coset_reps, left_coset_reps, AlgebraElement, Matrix2};
use crate::arith::{divisors, gcd, int, rat_pow, Rational};
use crate::error::{Error, Result};
use crate::forms::FormExpression;
use crate::series::{CycSeries, QSeries};

/// Scalar normalisation of the additive operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AdditiveNorm {
    /// c(m) ↦ n^{1−k/2} Σ_{d | (m,n)} d^{k−1} c(mn/d²).
    #[default]
    Scaled,
    /// c(m) ↦ Σ_{d | (m,n)} d^{k−1} c(mn/d²).
    Classical,
}

/// Scalar normalisation of the multiplicative operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MultNorm {
    /// ∏ f(α_i τ): the products displayed for E4, e.g. E4(2τ)E4(τ/2)E4((τ+1)/2).
    #[default]
    Bare,
    /// ∏ f|_k α_i with the factor (det α)^{k/2}(cτ + d)^{−k}.
    Slash,
}

fn check_weight(k: i64) -> Result<()> {
    if k % 2 != 0 {
        return Err(Error::UnsupportedWeightParity(k));
    }
    Ok(())
}

fn integral(f: &QSeries) -> Result<QSeries> {
    if f.denom() == 1 {
        return Ok(f.clone());
    }
    f.integral_projection()
}

/// f|_k T(n) at level one by the coefficient formula.
pub fn hecke_additive_formula(f: &QSeries, k: i64, n: u64) -> Result<QSeries> {
    hecke_additive_formula_with(f, k, n, AdditiveNorm::Scaled)
}

pub fn hecke_additive_formula_with(
    f: &QSeries,
    k: i64,
    n: u64,
    norm: AdditiveNorm,
) -> Result<QSeries> {
    check_weight(k)?;
    if n == 0 {
        return Err(Error::UnsupportedParameter("T(n) needs n ≥ 1".into()));
    }
    let f = integral(f)?;
    let ni = n as i64;
    let abs = f.abs_precision();
    let factor = match norm {
        AdditiveNorm::Scaled => rat_pow(&int(ni), 1 - k / 2),
        AdditiveNorm::Classical => Rational::one(),
    };
    let start = if f.order() < 0 {
        f.order() * ni
    } else {
        f.order().div_euclid(ni)
    };
    let mut coeffs = Vec::new();
    let mut m = start;
    'outer: loop {
        let ds: Vec<i64> = if m == 0 {
            divisors(n).into_iter().map(|d| d as i64).collect()
        } else {
            divisors(gcd(m.abs(), ni) as u64)
                .into_iter()
                .map(|d| d as i64)
                .collect()
        };
        let mut c = Rational::zero();
        for d in ds {
            let idx = m * ni / (d * d);
            if idx >= abs {
                break 'outer;
            }
            let v = f.coeff(idx)?;
            if !v.is_zero() {
                c += rat_pow(&int(d), k - 1) * v;
            }
        }
        coeffs.push(c * &factor);
        m += 1;
    }
    if coeffs.is_empty() {
        return Ok(QSeries::zero((), 1, m));
    }
    Ok(QSeries::from_rationals(start, coeffs))
}

/// The slash image f|_k α for upper-triangular α = (a b; 0 d) on the series
/// level: (ad)^{k/2} d^{−k} f((aτ + b)/d), or the bare f((aτ + b)/d).
pub fn slash_upper(f: &QSeries, k: i64, alpha: &Matrix2, norm: MultNorm) -> Result<CycSeries> {
    check_weight(k)?;
    if !alpha.is_upper_triangular() || alpha.a <= 0 || alpha.d <= 0 {
        return Err(Error::UnsupportedParameter(format!(
            "slash on q-expansions needs an upper-triangular matrix with positive diagonal, got {alpha}"
        )));
    }
    let (a, b, d) = (alpha.a, alpha.b, alpha.d);
    let grid = f.denom() as i64 * d;
    let twisted = f.twist(b, grid as u32);
    let moved = twisted.rescale(&Rational::new(a.into(), d.into()));
    Ok(match norm {
        MultNorm::Bare => moved,
        MultNorm::Slash => moved.scale(&(rat_pow(&int(a * d), k / 2) * rat_pow(&int(d), -k))),
    })
}

/// Σ_i f|_k α_i, projected back to a rational series in integral powers of q.
pub fn slash_sum(f: &QSeries, k: i64, reps: &[Matrix2]) -> Result<QSeries> {
    let mut acc: Option<CycSeries> = None;
    for alpha in reps {
        let t = slash_upper(f, k, alpha, MultNorm::Slash)?;
        acc = Some(match acc {
            None => t,
            Some(s) => s.add(&t),
        });
    }
    match acc {
        Some(s) => s.integral_projection(),
        None => Ok(QSeries::zero((), 1, f.abs_precision())),
    }
}

fn upper_reps(level: u64, n: u64) -> Result<Vec<Matrix2>> {
    let reps = left_coset_reps(level, n)?;
    debug_assert!(reps.iter().all(Matrix2::is_upper_triangular));
    Ok(reps)
}

/// f|_k T(n) at level N as the slash sum over left coset representatives.
pub fn hecke_additive_cosets(f: &QSeries, k: i64, n: u64, level: u64) -> Result<QSeries> {
    slash_sum(f, k, &upper_reps(level, n)?)
}

/// ∏_i f|α_i over the given representatives, for a series known to O(q^{abs}).
///
/// Representatives sharing (a, d) form a Galois orbit; each orbit product is
/// already rational, so it is projected before the orbits are multiplied.
pub fn slash_product(f: &QSeries, k: i64, reps: &[Matrix2], norm: MultNorm) -> Result<QSeries> {
    let mut groups: Vec<((i64, i64), Vec<&Matrix2>)> = Vec::new();
    for r in reps {
        match groups.iter_mut().find(|(key, _)| *key == (r.a, r.d)) {
            Some((_, v)) => v.push(r),
            None => groups.push(((r.a, r.d), vec![r])),
        }
    }
    let mut rational = QSeries::one(1);
    let mut first = true;
    let mut leftover: Option<CycSeries> = None;
    for (_, group) in groups {
        let mut prod: Option<CycSeries> = None;
        for alpha in group {
            let t = slash_upper(f, k, alpha, norm)?;
            prod = Some(match prod {
                None => t,
                Some(p) => p.mul(&t),
            });
        }
        let prod = prod.unwrap();
        match prod.integral_projection() {
            Ok(q) => {
                rational = if first { q } else { rational.mul(&q) };
                first = false;
            }
            Err(_) => {
                leftover = Some(match leftover {
                    None => prod,
                    Some(l) => l.mul(&prod),
                });
            }
        }
    }
    match leftover {
        None => Ok(rational),
        Some(l) => {
            let total = if first {
                l
            } else {
                l.mul(&rational.to_cyclotomic(1))
            };
            total.integral_projection()
        }
    }
}

/// Expansion of f long enough for ∏ f|α_i to be known to O(q^prec): the product
/// knows (A − o)·min(a/d) + o·Σ a/d where f = O(q^o) is known to O(q^A).
fn expand_for(f: &FormExpression, reps: &[Matrix2], prec: i64) -> Result<QSeries> {
    let probe = f.qexp(1)?;
    let o = Rational::new(probe.order().into(), (probe.denom() as i64).into());
    let ratios: Vec<Rational> = reps
        .iter()
        .map(|r| Rational::new(r.a.into(), r.d.into()))
        .collect();
    let total: Rational = ratios.iter().sum();
    let min = ratios.iter().min().cloned().unwrap_or_else(Rational::one);
    let need = &o + (int(prec) - &o * total) / min;
    let a = need.ceil().to_integer();
    f.qexp(i64::try_from(a).unwrap_or(i64::MAX / 4).max(1) + 2)
}

/// f|*T(n) at level N, delivered to O(q^prec).
pub fn hecke_multiplicative(
    f: &FormExpression,
    n: u64,
    level: u64,
    prec: i64,
) -> Result<FormExpression> {
    hecke_multiplicative_with(f, n, level, prec, MultNorm::Bare)
}

pub fn hecke_multiplicative_with(
    f: &FormExpression,
    n: u64,
    level: u64,
    prec: i64,
    norm: MultNorm,
) -> Result<FormExpression> {
    let f = f.at_level(level)?;
    let reps = upper_reps(level, n)?;
    multiplicative_over(&f, &reps, prec, norm)
}

fn multiplicative_over(
    f: &FormExpression,
    reps: &[Matrix2],
    prec: i64,
    norm: MultNorm,
) -> Result<FormExpression> {
    check_weight(f.weight())?;
    let series = expand_for(f, reps, prec)?;
    if series.leading().is_none() {
        return Err(Error::NonUnitLeading(
            "the form has no known nonzero coefficient".into(),
        ));
    }
    let image = slash_product(&series, f.weight(), reps, norm)?;
    let image = if image.abs_precision() >= prec {
        image.truncate(prec)
    } else {
        image
    };
    FormExpression::opaque(image, f.weight() * reps.len() as i64, f.level())
}

/// Additive action of an element of R₀(N) on the expansion of a weight-k form.
pub fn apply_element_additive(f: &QSeries, k: i64, u: &AlgebraElement) -> Result<QSeries> {
    let mut acc: Option<QSeries> = None;
    for ((a, d), m) in u.terms() {
        let reps = double_coset_reps(a, d, u.level())?;
        let t = slash_sum(f, k, &reps)?.scale(&int(m));
        acc = Some(match acc {
            None => t,
            Some(s) => s.add(&t),
        });
    }
    Ok(acc.unwrap_or_else(|| QSeries::zero((), 1, f.abs_precision())))
}

/// Multiplicative action: ∏ over the terms of u of (f|*T(a,d))^{mult}.
pub fn apply_element_multiplicative(
    f: &FormExpression,
    u: &AlgebraElement,
    prec: i64,
    norm: MultNorm,
) -> Result<FormExpression> {
    let f = f.at_level(u.level())?;
    let mut acc: Option<QSeries> = None;
    let mut weight = 0;
    for ((a, d), m) in u.terms() {
        let reps = double_coset_reps(a, d, u.level())?;
        let img = multiplicative_over(&f, &reps, prec + 8, norm)?;
        let s = img.qexp(prec + 8)?.pow(m)?;
        weight += img.weight() * m;
        acc = Some(match acc {
            None => s,
            Some(p) => p.mul(&s),
        });
    }
    let series = acc.unwrap_or_else(|| QSeries::one(prec.max(1) as usize));
    let series = if series.abs_precision() >= prec {
        series.truncate(prec)
    } else {
        series
    };
    FormExpression::opaque(series, weight, f.level())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Additive,
    Multiplicative,
}

/// f|u in either representation, returned as an opaque expression.
pub fn apply_element(
    f: &FormExpression,
    u: &AlgebraElement,
    mode: Mode,
    prec: i64,
) -> Result<FormExpression> {
    match mode {
        Mode::Multiplicative => apply_element_multiplicative(f, u, prec, MultNorm::Bare),
        Mode::Additive => {
            let f = f.at_level(u.level())?;
            let dmax = u.terms().map(|((a, d), _)| a * d).max().unwrap_or(1) as i64;
            let s = apply_element_additive(&f.qexp(dmax * prec.max(1) + 1)?, f.weight(), u)?;
            let s = if s.abs_precision() >= prec {
                s.truncate(prec)
            } else {
                s
            };
            FormExpression::opaque(s, f.weight(), f.level())
        }
    }
}
