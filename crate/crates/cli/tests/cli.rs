use std::process::{Command, Output};

use hecke_core::algebra::AlgebraElement;
use hecke_core::arith::{int, parse_rational};
use hecke_core::curve::{Divisor, HeegnerPoint};
use hecke_core::series::{series_from_json, QSeries};
use hecke_core::sums::EvalReport;
use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hecke(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn qexp_round_trips() {
    let s = series_from_json(&json(&["qexp", "--form", "E4", "--prec", "4"])).unwrap();
    assert_eq!(s, QSeries::from_ints(0, &[1, 240, 2160, 6720]));
}

#[test]
fn hecke_mult_of_e4() {
    let s = series_from_json(&json(&[
        "hecke-mult",
        "--form",
        "E4",
        "--n",
        "2",
        "--prec",
        "3",
    ]))
    .unwrap();
    assert_eq!(s, QSeries::from_ints(0, &[1, -53280, 1475280]));
}

#[test]
fn hecke_add_classical_scaling() {
    let scaled = series_from_json(&json(&[
        "hecke-add",
        "--form",
        "Delta",
        "--n",
        "2",
        "--prec",
        "4",
    ]))
    .unwrap();
    let classical = series_from_json(&json(&[
        "hecke-add",
        "--form",
        "Delta",
        "--n",
        "2",
        "--prec",
        "4",
        "--norm",
        "classical",
    ]))
    .unwrap();
    // Δ|T(2) = −24Δ classically; the other normalization carries 2^{1−6}
    assert_eq!(classical, QSeries::from_ints(1, &[-24, 576, -6048]));
    assert_eq!(scaled.scale(&int(32)), classical);
}

#[test]
fn algebra_product() {
    let v = json(&["algebra-mul", "--u", "T2", "--v", "T2"]);
    let got = AlgebraElement::from_json(&v).unwrap();
    let want = AlgebraElement::t(1, 4, 1)
        .unwrap()
        .add(&AlgebraElement::t(2, 2, 1).unwrap().scale(3));
    assert_eq!(got, want);
}

#[test]
fn divisor_examples() {
    let v = json(&[
        "hecke-div",
        "--n",
        "2",
        "--divisor",
        r#"{"N":1,"interior":[{"A":1,"B":0,"C":1,"coeff":"1"}],"cusps":[{"cusp":"inf","coeff":"-1"}]}"#,
    ]);
    let got = Divisor::from_json(&v).unwrap();
    let mut want = Divisor::point(&HeegnerPoint::new(1, 0, 4).unwrap(), 1, int(2));
    want.add_point(&HeegnerPoint::I, int(1));
    assert_eq!(got, want.sub(&Divisor::infinity(1, int(3))));

    let e4 = Divisor::from_json(&json(&["divisor", "--form", "E4"])).unwrap();
    assert_eq!(
        e4,
        Divisor::point(&HeegnerPoint::OMEGA, 1, parse_rational("1/3").unwrap())
    );
}

#[test]
fn rohrlich_exact_at_one() {
    let v = json(&["rohrlich", "--m", "2", "--form", "E4"]);
    assert_eq!(v["value"], "53280/1");
}

#[test]
fn bko_agrees_with_log_derivative() {
    let v = json(&["bko", "--n", "1", "--form", "E4", "--digits", "30"]);
    assert_eq!(v["log_derivative"], "-240/1");
    let re: f64 = v["value"][0].as_str().unwrap().parse().unwrap();
    assert!((re + 240.0).abs() < 1e-12);
}

#[test]
fn niebur_point_value() {
    let v = json(&[
        "niebur", "--m", "1", "--tau", "0,1", "--s", "1.5", "--C", "40",
    ]);
    let err: f64 = v["error"].as_str().unwrap().parse().unwrap();
    assert!(err.is_finite() && err > 0.0);
}

#[test]
fn verify_suite_reports_parse() {
    let v = json(&["verify", "--suite", "p-plication"]);
    let reports: Vec<EvalReport> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| EvalReport::from_json(r).unwrap())
        .collect();
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r.passed && r.exact));
}

#[test]
fn exit_codes() {
    assert_eq!(
        hecke(&["qexp", "--form", "bogus", "--prec", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hecke(&["qexp", "--form", "E4"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        hecke(&["niebur", "--m", "1", "--tau", "0,-1", "--s", "1.5"])
            .status
            .code(),
        Some(2)
    );
    let budget = [
        "niebur",
        "--m",
        "1",
        "--tau",
        "0,1",
        "--s",
        "1.5",
        "--C",
        "10",
        "--tolerance",
        "1e-30",
    ];
    assert_eq!(hecke(&budget).status.code(), Some(1));
    let out = hecke(&["rohrlich", "--m", "1", "--form", "Delta", "--s", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn table_output() {
    let out = hecke(&["--format", "table", "qexp", "--form", "E4", "--prec", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("coeffs") && l.contains("240/1")));
}
