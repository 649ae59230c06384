use proptest::prelude::*;

use hecke_core::algebra::{left_coset_reps, AlgebraElement, Matrix2};
use hecke_core::arith::{gcd, int, rat};
use hecke_core::curve::{hecke_divisor, reduce_point, Divisor, HeegnerPoint};
use hecke_core::forms::{parse_expression, FormExpression};
use hecke_core::series::{series_from_json, series_to_json, QSeries};
use hecke_core::sums::{pair, EvalReport, PointEvaluator};

fn series() -> impl Strategy<Value = QSeries> {
    (-3i64..3, prop::collection::vec(-20i64..20, 1..10))
        .prop_map(|(start, c)| QSeries::from_ints(start, &c))
}

fn point() -> impl Strategy<Value = HeegnerPoint> {
    (1i64..6, -6i64..6, 0i64..6).prop_map(|(a, b, extra)| {
        let c = b * b / (4 * a) + 1 + extra;
        HeegnerPoint::new(a, b, c).unwrap()
    })
}

fn level() -> impl Strategy<Value = u64> {
    1u64..=4
}

fn divisor(level: u64) -> impl Strategy<Value = Divisor> {
    (
        prop::collection::vec((point(), -5i64..5, 1i64..4), 0..4),
        -3i64..3,
    )
        .prop_map(move |(pts, inf)| {
            let mut d = Divisor::infinity(level, int(inf));
            for (z, n, den) in pts {
                d.add_point(&z, rat(n, den));
            }
            d
        })
}

fn element(level: u64) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((1u64..7, -3i64..4), 1..3).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(AlgebraElement::zero(level), |acc, (n, k)| {
                acc.add(&AlgebraElement::t_n(n, level).scale(k))
            })
    })
}

fn gamma0(level: u64) -> impl Strategy<Value = Matrix2> {
    (-5i64..5, -20i64..20, -4i64..4)
        .prop_filter("coprime bottom row", move |(k, d, _)| {
            gcd(level as i64 * k, *d) == 1
        })
        .prop_map(move |(k, d, t)| {
            Matrix2::upper(1, t, 1).mul(&Matrix2::complete_bottom_row(level as i64 * k, d))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.sub(&a).agrees_with(&QSeries::from_ints(0, &[0])));
    }

    #[test]
    fn series_json_round_trip(a in series()) {
        prop_assert_eq!(series_from_json(&series_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn divisor_json_round_trip(d in level().prop_flat_map(divisor)) {
        prop_assert_eq!(Divisor::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn algebra_json_round_trip(u in level().prop_flat_map(element)) {
        prop_assert_eq!(AlgebraElement::from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn form_json_round_trip(
        parts in prop::collection::vec(
            prop::sample::select(vec!["E4", "E6", "Delta", "jminus:1728", "jminus:0", "E4^2", "E6^-1"]),
            1..4,
        )
    ) {
        let f = parse_expression(&parts.join("*")).unwrap();
        prop_assert_eq!(FormExpression::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn report_json_round_trip(name in ".{0,20}", lhs in ".{0,20}", rhs in ".{0,20}", diff in 0.0f64..1.0, tol in 1e-30f64..1.0, exact in any::<bool>()) {
        let rep = if exact {
            EvalReport::exact_text(name, lhs, rhs, diff < 0.5)
        } else {
            EvalReport::numeric(name, lhs, rhs, diff, tol)
        };
        prop_assert_eq!(EvalReport::from_json(&rep.to_json()).unwrap(), rep);
    }

    #[test]
    fn pairing_is_linear((d1, d2) in level().prop_flat_map(|n| (divisor(n), divisor(n))), c in -5i64..5, k in -3i64..3) {
        let f = PointEvaluator::constant(d1.level(), int(c));
        let sum = pair(&f, &d1.add(&d2.scale(&int(k)))).unwrap().exact.unwrap();
        let parts = pair(&f, &d1).unwrap().exact.unwrap() + int(k) * pair(&f, &d2).unwrap().exact.unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn hecke_scales_degree(d in level().prop_flat_map(divisor), n in 1u64..7) {
        let reps = left_coset_reps(d.level(), n).unwrap().len() as i64;
        let image = hecke_divisor(n, &d).unwrap();
        prop_assert_eq!(image.degree(), int(reps) * d.degree());
    }

    #[test]
    fn algebra_commutes((u, v, w) in level().prop_flat_map(|n| (element(n), element(n), element(n)))) {
        prop_assert_eq!(u.mul(&v).unwrap(), v.mul(&u).unwrap());
        prop_assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
    }

    #[test]
    fn reduction_is_invariant((n, g) in level().prop_flat_map(|n| (Just(n), gamma0(n))), z in point()) {
        let red = reduce_point(&z, n);
        prop_assert_eq!(reduce_point(&z.act(&g), n).key, red.key);
        prop_assert_eq!(reduce_point(&red.point, n).point, red.point);
        prop_assert!(red.witness.in_gamma0(n));
        prop_assert_eq!(z.act(&red.witness), red.point);
    }
}
