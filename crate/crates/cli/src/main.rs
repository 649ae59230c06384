//! `hecke`: command-line front-end for hecke-core.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use hecke_core::algebra::parse_element;
use hecke_core::arith::{format_rational, int, rat_pow};
use hecke_core::curve::{hecke_divisor, Divisor};
use hecke_core::forms::{parse_expression, FormExpression};
use hecke_core::hecke::{hecke_additive_cosets, hecke_multiplicative_with, MultNorm};
use hecke_core::numeric::niebur::{niebur_hecke_value, niebur_value, EvalParams};
use hecke_core::series::series_to_json;
use hecke_core::sums::{bko_pairing, probe_order, r_at_s1, r_numeric, EvalReport};
use hecke_core::verify::{run_suite, SUITES};
use hecke_core::Error;

/// Default working precision (decimal digits) of numeric verbs.
const DIGITS_ENV: &str = "HECKE_DIGITS";

#[derive(Parser)]
#[command(
    name = "hecke",
    version,
    about = "Hecke operators on q-expansions, divisors and modular forms"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum AddNorm {
    Scaled,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum MulNorm {
    Bare,
    Slash,
}

#[derive(Subcommand)]
enum Verb {
    /// q-expansion of a registry form.
    Qexp {
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=100_000))]
        prec: i64,
    },
    /// f|_k T(n) on q-expansions.
    HeckeAdd {
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=100_000))]
        prec: i64,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        level: u64,
        #[arg(long, value_enum, default_value_t = AddNorm::Scaled)]
        norm: AddNorm,
    },
    /// The multiplicative operator f|*T(n).
    HeckeMult {
        #[arg(long)]
        form: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=100_000))]
        prec: i64,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        level: u64,
        #[arg(long, value_enum, default_value_t = MulNorm::Bare)]
        norm: MulNorm,
    },
    /// Product of two elements of the Hecke algebra, e.g. T2, T(1,4).
    AlgebraMul {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        level: u64,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Divisor of a registry form.
    Divisor {
        #[arg(long)]
        form: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        level: Option<u64>,
    },
    /// T(n) applied to a divisor, given as JSON or as the divisor of a form.
    HeckeDiv {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, conflicts_with = "form", required_unless_present = "form")]
        divisor: Option<String>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        level: Option<u64>,
    },
    /// (j_n, f)_BKO numerically, next to −Coeff_{q^n}(Θf/f).
    Bko {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        form: String,
        #[arg(long, env = DIGITS_ENV, default_value_t = 50, value_parser = clap::value_parser!(u32).range(10..=2000))]
        digits: u32,
    },
    /// ℛ_{N,m}(s; f): exact at s = 1, numeric for s > 1.
    Rohrlich {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        level: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        form: String,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long = "C", default_value_t = 300, value_parser = clap::value_parser!(u64).range(2..))]
        c_max: u64,
    },
    /// F_{N,−m}(τ, s), or (F_{N,−m}|T(n))(τ, s) with --hecke.
    Niebur {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1)]
        level: u64,
        #[arg(long)]
        m: u64,
        /// "x,y" for τ = x + iy
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        s: f64,
        #[arg(long = "C", default_value_t = 300, value_parser = clap::value_parser!(u64).range(2..))]
        c_max: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        hecke: Option<u64>,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn form(s: &str) -> Result<FormExpression, Failure> {
    parse_expression(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn form_at(s: &str, level: Option<u64>) -> Result<FormExpression, Failure> {
    let f = form(s)?;
    Ok(match level {
        Some(n) => f.at_level(n)?,
        None => f,
    })
}

fn parse_tau(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Usage(format!("--tau expects \"x,y\" with y > 0, got {s:?}"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    if !(y > 0.0) || !x.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(x, y))
}

fn run(verb: Verb) -> Result<(Value, bool), Failure> {
    let out = match verb {
        Verb::Qexp { form: f, prec } => series_to_json(&form(&f)?.qexp(prec)?),
        Verb::HeckeAdd {
            form: f,
            n,
            prec,
            level,
            norm,
        } => {
            let f = form(&f)?.at_level(level)?;
            let k = f.weight();
            // T(n) divides exponents by up to n
            let o = probe_order(&f)?;
            let work = (n as i64) * prec.max(o + 1) + (n as i64) * o.abs() + 1;
            let mut s = hecke_additive_cosets(&f.qexp(work)?, k, n, level)?;
            if let AddNorm::Classical = norm {
                s = s.scale(&rat_pow(&int(n as i64), k / 2 - 1));
            }
            let s = if s.abs_precision() >= prec {
                s.truncate(prec)
            } else {
                s
            };
            series_to_json(&s)
        }
        Verb::HeckeMult {
            form: f,
            n,
            prec,
            level,
            norm,
        } => {
            let norm = match norm {
                MulNorm::Bare => MultNorm::Bare,
                MulNorm::Slash => MultNorm::Slash,
            };
            let g = hecke_multiplicative_with(&form(&f)?, n, level, prec, norm)?;
            series_to_json(&g.qexp(prec)?)
        }
        Verb::AlgebraMul { level, u, v } => {
            let u = parse_element(&u, level).map_err(|e| Failure::Usage(e.to_string()))?;
            let v = parse_element(&v, level).map_err(|e| Failure::Usage(e.to_string()))?;
            u.mul(&v)?.to_json()
        }
        Verb::Divisor { form: f, level } => form_at(&f, level)?.divisor()?.to_json(),
        Verb::HeckeDiv {
            n,
            divisor,
            form: f,
            level,
        } => {
            let d = match (divisor, f) {
                (Some(text), _) => {
                    let v: Value = serde_json::from_str(&text)
                        .map_err(|e| Failure::Usage(format!("--divisor: {e}")))?;
                    let d = Divisor::from_json(&v).map_err(|e| Failure::Usage(e.to_string()))?;
                    match level {
                        Some(m) if m != d.level() => d.lift(m / d.level())?,
                        _ => d,
                    }
                }
                (None, Some(f)) => form_at(&f, level)?.divisor()?,
                (None, None) => return Err(Failure::Usage("give --divisor or --form".into())),
            };
            hecke_divisor(n, &d)?.to_json()
        }
        Verb::Bko { n, form: f, digits } => {
            let f = form(&f)?;
            let v = bko_pairing(n, &f, digits)?;
            let mut out = v.to_json(digits.min(60));
            out["log_derivative"] = json!(format_rational(&r_at_s1(1, n, &f)?));
            out["digits"] = json!(digits);
            out
        }
        Verb::Rohrlich {
            level,
            m,
            form: f,
            s,
            c_max,
        } => {
            let f = form(&f)?;
            match s {
                None => json!({"s": 1, "value": format_rational(&r_at_s1(level, m, &f)?)}),
                Some(s) if s == 1.0 => {
                    json!({"s": 1, "value": format_rational(&r_at_s1(level, m, &f)?)})
                }
                Some(s) => {
                    let params = EvalParams::new(c_max, s)?;
                    let mut out = r_numeric(level, m, &f, params)?.to_json(16);
                    out["s"] = json!(s);
                    out["C"] = json!(c_max);
                    out
                }
            }
        }
        Verb::Niebur {
            level,
            m,
            tau,
            s,
            c_max,
            hecke,
            tolerance,
        } => {
            let tau = parse_tau(&tau)?;
            let mut params = EvalParams::new(c_max, s)?;
            params.tolerance = tolerance;
            let v = match hecke {
                Some(n) => niebur_hecke_value(level, m, n, tau, &params)?,
                None => niebur_value(level, m, tau, &params)?,
            };
            v.to_json(&params)
        }
        Verb::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite:?}; expected all or one of {}",
                    SUITES.join(", ")
                )));
            };
            let mut reports: Vec<EvalReport> = Vec::new();
            for name in names {
                reports.extend(run_suite(name)?);
            }
            let ok = reports.iter().all(|r| r.passed);
            return Ok((
                Value::Array(reports.iter().map(EvalReport::to_json).collect()),
                ok,
            ));
        }
    };
    Ok((out, true))
}

fn render_table(v: &Value) -> String {
    let mut out = String::new();
    table_into(v, "", &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table_into(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                table_into(x, &key, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let row: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}\t{}\n", row.join("\t")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                table_into(x, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}\t{}\n", scalar(other))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((value, ok)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("JSON") + "\n",
                Format::Table => render_table(&value),
            };
            // a closed pipe is not an error of the computation
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
