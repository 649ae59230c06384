//! Library output against naive reference computations done here in plain
//! integer arithmetic.

use hecke_core::algebra::left_coset_reps;
use hecke_core::arith::{gamma0_index, Rational};
use hecke_core::curve::cusps;
use hecke_core::forms::{delta, eisenstein, parse_expression, EtaQuotientSpec};
use hecke_core::hecke::{
    hecke_additive_cosets, hecke_additive_formula, hecke_additive_formula_with, AdditiveNorm,
};
use hecke_core::series::QSeries;

const PREC: usize = 40;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn sigma(k: u32, n: u64) -> i128 {
    divisors(n).iter().map(|&d| (d as i128).pow(k)).sum()
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len().min(b.len())];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Π_{n ≥ 1} (1 − q^{step·n})^e, as coefficients of q^0..q^{len−1}.
fn euler_power(step: usize, e: i64, len: usize) -> Vec<i128> {
    let mut acc = vec![0; len];
    acc[0] = 1;
    let mut n = step;
    while n < len {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for i in (n..len).rev() {
                    acc[i] -= acc[i - n];
                }
            } else {
                for i in n..len {
                    acc[i] += acc[i - n];
                }
            }
        }
        n += step;
    }
    acc
}

/// Power series quotient a/b, b[0] = ±1.
fn divide(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len().min(b.len())];
    let mut rem = a.to_vec();
    for i in 0..out.len() {
        out[i] = rem[i] / b[0];
        for j in i..out.len() {
            rem[j] -= out[i] * b[j - i];
        }
    }
    out
}

fn coeff(s: &QSeries, e: i64) -> Rational {
    s.coeff(e).unwrap()
}

fn assert_matches(s: &QSeries, start: i64, want: &[i128]) {
    for (i, w) in want.iter().enumerate() {
        let e = start + i as i64;
        assert_eq!(
            coeff(s, e),
            Rational::from_integer((*w).into()),
            "coefficient of q^{e}"
        );
    }
}

fn tau_naive() -> Vec<i128> {
    // τ(n) for n = 0..PREC, τ(0) = 0
    let mut t = vec![0];
    t.extend(euler_power(1, 24, PREC - 1));
    t
}

#[test]
fn ramanujan_tau() {
    let tau = tau_naive();
    assert_eq!(&tau[1..6], &[1, -24, 252, -1472, 4830]);
    assert_matches(&delta(PREC as i64).unwrap(), 0, &tau);
    for (m, n) in [(2, 3), (3, 5), (4, 9), (5, 7)] {
        assert_eq!(tau[m * n], tau[m] * tau[n]);
    }
    for p in [2usize, 3, 5] {
        assert_eq!(tau[p * p], tau[p] * tau[p] - (p as i128).pow(11));
    }
}

#[test]
fn eisenstein_series() {
    for (k, c) in [(4u32, 240i128), (6, -504)] {
        let mut want = vec![1];
        want.extend((1..PREC as u64).map(|n| c * sigma(k - 1, n)));
        assert_matches(&eisenstein(k as i64, PREC as i64).unwrap(), 0, &want);
    }
}

#[test]
fn j_invariant() {
    let mut e4 = vec![1];
    e4.extend((1..PREC as u64).map(|n| 240 * sigma(3, n)));
    let e4_cubed = mul(&mul(&e4, &e4), &e4);
    // Δ/q
    let d = euler_power(1, 24, PREC);
    let j = divide(&e4_cubed, &d);
    assert_eq!(&j[..4], &[1, 744, 196884, 21493760]);
    let series = parse_expression("j")
        .unwrap()
        .qexp(PREC as i64 - 2)
        .unwrap();
    assert_matches(&series, -1, &j[..PREC - 1]);
}

#[test]
fn eta_quotients() {
    let cases: [(u64, &[(u64, i64)]); 5] = [
        (2, &[(1, 8), (2, 8)]),
        (2, &[(1, 24), (2, -24)]),
        (3, &[(1, 6), (3, 6)]),
        (4, &[(1, 8), (4, -8)]),
        (6, &[(1, 2), (2, 2), (3, 2), (6, 2)]),
    ];
    for (level, exps) in cases {
        let mut prod = vec![0; PREC];
        prod[0] = 1;
        let mut shift = 0;
        for &(delta, r) in exps {
            prod = mul(&prod, &euler_power(delta as usize, r, PREC));
            shift += delta as i64 * r;
        }
        assert_eq!(shift % 24, 0);
        let s = EtaQuotientSpec::new(level, exps.iter().copied())
            .unwrap()
            .qexp(shift / 24 + PREC as i64)
            .unwrap();
        assert_eq!(s.order(), shift / 24, "order for {exps:?}");
        assert_matches(&s, shift / 24, &prod);
    }
}

#[test]
fn hecke_on_delta_is_naive_formula() {
    let tau = tau_naive();
    let d = delta(PREC as i64).unwrap();
    for n in [2u64, 3, 4, 6] {
        let img = hecke_additive_formula_with(&d, 12, n, AdditiveNorm::Classical).unwrap();
        let len = (PREC as u64 - 1) / n;
        for m in 1..len {
            let mut b = 0i128;
            for e in divisors(gcd(m, n)) {
                b += (e as i128).pow(11) * tau[(m * n / (e * e)) as usize];
            }
            assert_eq!(
                coeff(&img, m as i64),
                Rational::from_integer(b.into()),
                "T({n}) at q^{m}"
            );
            // eigenform
            assert_eq!(b, tau[n as usize] * tau[m as usize]);
        }
    }
}

#[test]
fn coset_sum_matches_formula() {
    let e4 = eisenstein(4, 60).unwrap();
    for n in [2u64, 3, 5, 6] {
        let cosets = hecke_additive_cosets(&e4, 4, n, 1).unwrap();
        let formula = hecke_additive_formula(&e4, 4, n).unwrap();
        assert!(cosets.agrees_with(&formula), "T({n})");
        assert!(cosets.abs_precision() >= 60 / n as i64 - 1);
    }
}

#[test]
fn coset_counts() {
    for level in 1..=12u64 {
        for n in 1..=12u64 {
            let want: u64 = divisors(n)
                .into_iter()
                .filter(|&a| gcd(a, level) == 1)
                .map(|a| n / a)
                .sum();
            assert_eq!(
                left_coset_reps(level, n).unwrap().len() as u64,
                want,
                "N = {level}, n = {n}"
            );
        }
    }
}

#[test]
fn cusp_widths() {
    for level in 1..=36u64 {
        let list = cusps(level);
        let totient = |m: u64| (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64;
        let count: u64 = divisors(level)
            .into_iter()
            .map(|d| totient(gcd(d, level / d)))
            .sum();
        assert_eq!(list.len() as u64, count, "number of cusps of X0({level})");
        let mut total = 0;
        for info in &list {
            let c = info.rep.den.unsigned_abs();
            let want = if c == 0 { 1 } else { level / gcd(c * c, level) };
            assert_eq!(
                info.width, want,
                "width of {}/{} at N = {level}",
                info.rep.num, info.rep.den
            );
            total += info.width;
        }
        assert_eq!(
            total,
            gamma0_index(level),
            "widths sum to the index at N = {level}"
        );
    }
}
