//! The thirteen rational CM j-invariants and their reduced forms.

use super::point::HeegnerPoint;
use crate::arith::{parse_rational, Rational};

const TABLE: [(&str, i64, i64, i64); 13] = [
    ("0", 1, 1, 1),
    ("1728", 1, 0, 1),
    ("-3375", 1, 1, 2),
    ("8000", 1, 0, 2),
    ("-32768", 1, 1, 3),
    ("54000", 1, 0, 3),
    ("287496", 1, 0, 4),
    ("-884736", 1, 1, 5),
    ("-12288000", 1, 1, 7),
    ("16581375", 1, 0, 7),
    ("-884736000", 1, 1, 11),
    ("-147197952000", 1, 1, 17),
    ("-262537412640768000", 1, 1, 41),
];

/// Reduced CM point with j(z) = c, for the class-number-one values.
pub fn point_for_j(c: &Rational) -> Option<HeegnerPoint> {
    TABLE
        .iter()
        .find(|(j, ..)| parse_rational(j).as_ref() == Ok(c))
        .map(|&(_, a, b, cc)| HeegnerPoint { a, b, c: cc })
}

/// j of a reduced point, when it is one of the tabulated values.
pub fn j_for_point(z: &HeegnerPoint) -> Option<Rational> {
    let (z0, _) = z.reduce();
    TABLE
        .iter()
        .find(|&&(_, a, b, c)| HeegnerPoint { a, b, c } == z0)
        .map(|(j, ..)| parse_rational(j).unwrap())
}
