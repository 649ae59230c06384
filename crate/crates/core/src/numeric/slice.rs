//! The r = 0 slice 𝕁_{N,m,0} at genus-zero levels, built as a polynomial in a
//! Hauptmodul with its constant term set to zero.

use crate::arith::int;
use crate::error::{Error, Result};
use crate::forms::{j, EtaQuotientSpec};
use crate::hecke::hecke_additive_cosets;
use crate::series::QSeries;

/// Hauptmodul q⁻¹ + O(1) of X₀(N) for N ∈ {1, …, 5}.
pub fn hauptmodul(level: u64, prec: i64) -> Result<QSeries> {
    let spec = match level {
        1 => return j(prec),
        2 => EtaQuotientSpec::new(2, [(1, 24), (2, -24)])?,
        3 => EtaQuotientSpec::new(3, [(1, 12), (3, -12)])?,
        4 => EtaQuotientSpec::new(4, [(1, 8), (4, -8)])?,
        5 => EtaQuotientSpec::new(5, [(1, 6), (5, -6)])?,
        6..=10 | 12 | 13 | 16 | 18 | 25 => {
            return Err(Error::UnsupportedParameter(format!(
                "no Hauptmodul is tabulated for level {level}"
            )))
        }
        _ => return Err(Error::NonGenusZeroLevel(level)),
    };
    spec.qexp(prec)
}

/// The weakly holomorphic q^{−m} + O(q) of level N with zero constant term.
pub fn harmonic_slice(level: u64, m: u64, prec: i64) -> Result<QSeries> {
    if m == 0 {
        return Err(Error::UnsupportedParameter("the slice needs m ≥ 1".into()));
    }
    let m = m as i64;
    let t = hauptmodul(level, prec.max(1) + m)?;
    let mut powers = vec![t.clone()];
    for k in 1..m as usize {
        let next = powers[k - 1].mul(&t);
        powers.push(next);
    }
    let mut f = powers[m as usize - 1].clone();
    for k in (1..m).rev() {
        let c = f.coeff_q(-k)?;
        f = f.sub(&powers[k as usize - 1].scale(&c));
    }
    let c0 = f.coeff_q(0)?;
    Ok(f.add_constant(&-c0)?.truncate(prec))
}

/// Both sides of the p-plication formula for 𝕁_{N,m,0}|₀T(p), after Θ, through
/// O(q^prec):
///
/// p ∤ N: 𝕁_{N,pm} + p·𝕁_{N,m/p};  p | N: 𝕁_{N,pm} + p·𝕁_{N/p,m/p} − 𝕁_{N/p,m}(pτ).
pub fn pplication(level: u64, m: u64, p: u64, prec: i64) -> Result<(QSeries, QSeries)> {
    if !crate::arith::is_prime(p) {
        return Err(Error::UnsupportedParameter(format!("{p} is not prime")));
    }
    let pi = p as i64;
    let work = prec * pi + 2 * (m as i64) + 2;
    let f = harmonic_slice(level, m, work)?;
    let lhs = hecke_additive_cosets(&f, 0, p, level)?;
    let mut rhs = harmonic_slice(level, p * m, work)?;
    if level.is_multiple_of(p) {
        let lower = level / p;
        if m.is_multiple_of(p) {
            rhs = rhs.add(&harmonic_slice(lower, m / p, work)?.scale(&int(pi)));
        }
        rhs = rhs.sub(&harmonic_slice(lower, m, work)?.rescale(&int(pi)));
    } else if m.is_multiple_of(p) {
        rhs = rhs.add(&harmonic_slice(level, m / p, work)?.scale(&int(pi)));
    }
    Ok((lhs.theta().truncate(prec), rhs.theta().truncate(prec)))
}
