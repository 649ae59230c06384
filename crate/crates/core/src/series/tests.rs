use super::*;
use crate::arith::{int, rat};

fn geometric(n: usize) -> QSeries {
    QSeries::from_ints(0, &vec![1; n])
}

#[test]
fn difference_of_squares() {
    let a = QSeries::from_ints(0, &[1, 1, 0, 0, 0]);
    let b = QSeries::from_ints(0, &[1, -1, 0, 0, 0]);
    assert_eq!(a.mul(&b), QSeries::from_ints(0, &[1, 0, -1, 0, 0]));
}

#[test]
fn geometric_inverse() {
    let a = QSeries::from_ints(0, &[1, -1, 0, 0]);
    assert_eq!(a.inverse().unwrap(), geometric(4));
}

#[test]
fn self_division_is_one() {
    let f = QSeries::from_ints(1, &[1, -24, 252, -1472, 4830]);
    let one = f.div(&f).unwrap();
    assert_eq!(one, QSeries::one(5));
}

#[test]
fn division_by_zero_series() {
    let z = QSeries::zero((), 1, 5);
    assert!(matches!(
        geometric(3).div(&z),
        Err(Error::NonUnitLeading(_))
    ));
}

#[test]
fn precision_propagation() {
    // (q^-1 + O(q^2)) * (q + q^2 + O(q^5)): order 0, abs = min(2 + 1, 5 - 1) = 3
    let a = QSeries::from_ints(-1, &[1, 0, 0]);
    let b = QSeries::from_ints(1, &[1, 1, 0, 0]);
    let c = a.mul(&b);
    assert_eq!(c.order(), 0);
    assert_eq!(c.abs_precision(), 3);
    assert!(c.coeff(3).is_err());
}

#[test]
fn powers_match_repeated_products() {
    let f = QSeries::from_ints(1, &[2, -3, 5, 7, 1, 0, 4]);
    let f3 = f.mul(&f).mul(&f);
    assert_eq!(f.pow(3).unwrap(), f3);
    let inv2 = f.mul(&f).inverse().unwrap();
    assert_eq!(f.pow(-2).unwrap(), inv2);
    assert_eq!(f.pow(0).unwrap(), QSeries::one(7));
}

#[test]
fn theta_examples() {
    let q5 = QSeries::monomial(int(1), 1, 5, 3);
    assert_eq!(q5.theta(), QSeries::monomial(int(5), 1, 5, 3));
    let seven = QSeries::constant(int(7), 4);
    let t = seven.theta();
    assert!(t.is_zero());
    assert_eq!(t.abs_precision(), 4);
    let half = QSeries::monomial(int(1), 2, 1, 2);
    assert_eq!(half.theta().leading(), Some(&rat(1, 2)));
}

#[test]
fn log_derivative_of_monomial() {
    let f = QSeries::monomial(int(3), 1, -1, 6);
    assert_eq!(f.log_derivative().unwrap(), QSeries::constant(int(-1), 6));
}

#[test]
fn rescale_examples() {
    let f = QSeries::from_ints(-1, &[1, 24, 0]);
    let g = f.rescale(&int(2));
    assert_eq!(g.denom(), 1);
    assert_eq!(g.order(), -2);
    assert_eq!(g.coeff(0).unwrap(), int(24));
    assert_eq!(g.coeff(-1).unwrap(), int(0));
    let d = QSeries::from_ints(1, &[1, -24, 252]);
    let h = d.rescale(&rat(1, 2));
    assert_eq!((h.denom(), h.order()), (2, 1));
    // grid 4 scaled by 3/2: exponents e/4 -> 3e/8
    let p = Series::from_coeffs((), 4, 1, vec![int(1), int(2)]);
    let r = p.rescale(&rat(3, 2));
    assert_eq!(r.denom(), 8);
    assert_eq!(r.coeff(3).unwrap(), int(1));
    assert_eq!(r.coeff(6).unwrap(), int(2));
}

#[test]
fn twist_examples() {
    let q = QSeries::monomial(int(1), 1, 1, 2);
    let t = q.twist(1, 2);
    assert_eq!(t.leading().unwrap().as_rational(), Some(int(-1)));
    let h = Series::monomial(int(1), 2, 1, 2);
    let th = h.twist(1, 2);
    assert_eq!(th.leading().unwrap().as_rational(), Some(int(-1)));
    assert_eq!(q.twist(0, 5).integral_projection().unwrap(), q);
}

#[test]
fn galois_orbit_product_is_rational() {
    let delta = QSeries::from_ints(1, &[1, -24, 252, -1472, 4830, -6048, -16744, 84480]);
    let r = delta.rescale(&rat(1, 2));
    let prod = r.twist(0, 2).mul(&r.twist(1, 2));
    let p = prod.integral_projection().unwrap();
    assert_eq!(p.order(), 1);
    assert_eq!(p.coeff_q(1).unwrap(), int(-1));
}

#[test]
fn integral_projection_examples() {
    let f = Series::from_coeffs((), 2, 0, vec![int(1), int(0), int(5), int(0)]);
    let p = f.integral_projection().unwrap();
    assert_eq!(p, QSeries::from_ints(0, &[1, 5]));
    let g = Series::monomial(int(1), 2, 1, 3);
    assert!(matches!(
        g.integral_projection(),
        Err(Error::NotIntegralSeries(_))
    ));
    let z = QSeries::monomial(int(1), 1, 1, 3).twist(1, 3);
    assert!(matches!(
        z.integral_projection(),
        Err(Error::NotIntegralSeries(_))
    ));
}

#[test]
fn mixed_grid_addition() {
    let a = QSeries::from_ints(0, &[1, 1, 1]);
    let b = Series::from_coeffs((), 2, 1, vec![int(1), int(0), int(0)]);
    let c = a.add(&b);
    assert_eq!(c.denom(), 2);
    assert_eq!(c.abs_precision(), 4);
    assert_eq!(c.coeff(1).unwrap(), int(1));
    assert_eq!(c.coeff(2).unwrap(), int(1));
}

#[test]
fn json_round_trip() {
    let f = Series::from_coeffs((), 3, -2, vec![rat(-36882000, 691), int(0), int(7)]);
    let v = series_to_json(&f);
    assert_eq!(v["coeffs"][0], "-36882000/691");
    assert_eq!(series_from_json(&v).unwrap(), f);
    let c = QSeries::from_ints(0, &[1, 2, 3]).twist(1, 3);
    let w = series_to_json(&c);
    assert_eq!(cyclotomic_series_from_json(&w).unwrap(), c);
    let z = QSeries::zero((), 1, 4);
    assert_eq!(series_from_json(&series_to_json(&z)).unwrap(), z);
}
