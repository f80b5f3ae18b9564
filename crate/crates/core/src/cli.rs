//! The `descent` command line. [`run`] parses arguments, dispatches and
//! returns the process exit code: 0 success, 1 failed verification,
//! 2 usage or input error, 3 capacity guardrail.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::json::QCoeffs;
use crate::algebra::{QPolynomial, Rational};
use crate::descent::{
    eulerian_element, eulerian_polynomial, loday_elements, structure_poly_coeffs,
    structure_poly_eval, verify_named, verify_q_identity, Element, QPair, StructureKind,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::perm::{lift_guardrail, Permutation, SignedPermutation};
use crate::poset::{
    count_partitions, order_poly_closed, parse_poset, q_count_partitions, q_order_poly_closed,
    AnyPoset, BPoset, Flavor, Poset, PosetRef,
};
use crate::shuffle::{a_shuffle_distribution, repeated_shuffle, tvd_csv, tvd_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Decimal places of the TVD table when `--decimal` is absent.
const TVD_PLACES: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "descent",
    version,
    about = "Exact Eulerian descent algebras and their verification"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Also render rationals as decimals with this many places.
    #[arg(long, value_name = "P", global = true)]
    decimal: Option<usize>,
    /// Worker threads; output does not depend on it.
    #[arg(long, value_name = "T", global = true)]
    threads: Option<usize>,
    /// Lift the enumeration size guardrail.
    #[arg(long, global = true)]
    force: bool,
    /// Zero the timing field of reports so output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Descent statistics of one permutation.
    Stats {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[arg(long)]
        signed: bool,
    },
    /// Eulerian polynomial coefficients of a kind.
    Eulerian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kind: StructureKind,
    },
    /// Order polynomial by brute force, or against its closed form.
    Orderpoly {
        #[arg(long, conflicts_with = "perm")]
        poset: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "ordinary")]
        flavor: Flavor,
        #[arg(long)]
        q: bool,
        #[arg(long, requires = "perm")]
        closed: bool,
        #[arg(long, allow_hyphen_values = true)]
        perm: Option<String>,
    },
    /// Linear extensions of a poset file.
    Linext {
        #[arg(long)]
        poset: PathBuf,
    },
    /// One group algebra element.
    Element {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a")]
        kind: StructureKind,
        #[arg(long, group = "which")]
        eulerian: Option<usize>,
        #[arg(long, group = "which", allow_hyphen_values = true)]
        structure: Option<Rational>,
        #[arg(long, group = "which")]
        loday: Option<usize>,
        #[arg(long)]
        bar: bool,
    },
    /// The orthogonal idempotent family of a kind.
    Idempotents {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kind: StructureKind,
    },
    /// Exhaustive check of one identity.
    Verify {
        #[arg(long)]
        n: usize,
        /// a, cyclic, b, aug, mixed, loday, theta, theta-literal, props,
        /// props-cyclic, props-aug, shuffle or idempotents-mixed.
        #[arg(long)]
        identity: String,
    },
    /// A q-product identity at integer specializations.
    Qverify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pair: QPair,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Riffle-shuffle distribution, or distance to uniform.
    Shuffle {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        a: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        /// Distance to uniform after 1..=M two-packet shuffles.
        #[arg(long, requires = "m")]
        tvd: bool,
    },
}

/// What a subcommand produced.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

/// Runs the CLI on `args` (program name first), writing results to `out`
/// and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if cli.global.force {
        lift_guardrail();
    }
    let result = match cli.global.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli))),
        None => dispatch(&cli),
    };
    match result {
        Ok(o) => {
            let _ = write!(out, "{}", o.text);
            if !o.text.ends_with('\n') {
                let _ = writeln!(out);
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::InvariantViolation(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Stats { perm, signed } => stats(g, perm, *signed),
        Command::Eulerian { n, kind } => {
            let hist = eulerian_polynomial(*n, *kind)?;
            let first = *kind.eulerian_range(*n).start();
            Ok(Output::ok(match g.format {
                Format::Json => json!(hist).to_string(),
                Format::Text => hist
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                Format::Csv => {
                    let mut s = String::from("exponent,count\n");
                    for (j, c) in hist.iter().enumerate() {
                        s.push_str(&format!("{},{c}\n", first + j));
                    }
                    s
                }
            }))
        }
        Command::Orderpoly {
            poset,
            k,
            flavor,
            q,
            closed,
            perm,
        } => orderpoly(g, poset.as_ref(), *k, *flavor, *q, *closed, perm.as_deref()),
        Command::Linext { poset } => linext(g, poset),
        Command::Element {
            n,
            kind,
            eulerian,
            structure,
            loday,
            bar,
        } => {
            let e = match (eulerian, structure, loday) {
                (Some(i), None, None) => eulerian_element(*n, *kind, *i)?,
                (None, Some(x), None) => structure_poly_eval(*n, *kind, x, false)?,
                (None, None, Some(k)) => {
                    if *kind != StructureKind::A {
                        return Err(Error::InvalidArgument(
                            "Loday elements live in the type A algebra".into(),
                        ));
                    }
                    loday_elements(*n, *k)?.1
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "exactly one of --eulerian, --structure, --loday is required".into(),
                    ))
                }
            };
            let e = if *bar { e.bar() } else { e };
            element_output(g, &e).map(Output::ok)
        }
        Command::Idempotents { n, kind } => {
            let fam = structure_poly_coeffs(*n, *kind)?;
            match g.format {
                Format::Json => {
                    let members: Vec<Value> = fam
                        .members
                        .iter()
                        .map(|e| element_value(g, e))
                        .collect::<Result<_>>()?;
                    Ok(Output::ok(Value::Array(members).to_string()))
                }
                Format::Text => {
                    let mut s = String::new();
                    for (i, e) in fam.indices.iter().zip(&fam.members) {
                        s.push_str(&format!("e_{i}:\n{}", element_text(g, e)));
                    }
                    Ok(Output::ok(s))
                }
                Format::Csv => no_csv("idempotents"),
            }
        }
        Command::Verify { n, identity } => {
            let report = verify_named(*n, identity)?;
            report_output(g, report)
        }
        Command::Qverify { n, pair, k, l } => {
            report_output(g, verify_q_identity(*n, *pair, *k, *l)?)
        }
        Command::Shuffle { n, a, m, tvd } => shuffle(g, *n, *a, *m, *tvd),
    }
}

fn no_csv(what: &str) -> Result<Output> {
    Err(Error::InvalidArgument(format!(
        "csv output is not available for {what}"
    )))
}

fn stats(g: &Global, perm: &str, signed: bool) -> Result<Output> {
    let value = if signed {
        serde_json::to_value(perm.parse::<SignedPermutation>()?.descent_stats())?
    } else {
        serde_json::to_value(perm.parse::<Permutation>()?.descent_stats())?
    };
    match g.format {
        Format::Json => Ok(Output::ok(value.to_string())),
        Format::Text => {
            let mut s = String::new();
            for (k, v) in value.as_object().expect("records serialize as objects") {
                s.push_str(&format!("{k}: {v}\n"));
            }
            Ok(Output::ok(s))
        }
        Format::Csv => no_csv("stats"),
    }
}

fn read_poset(path: &PathBuf) -> Result<AnyPoset> {
    parse_poset(&std::fs::read_to_string(path)?)
}

fn q_json(p: &QPolynomial) -> Value {
    serde_json::to_value(QCoeffs(
        p.terms().map(|(e, c)| (e, c.to_string())).collect(),
    ))
    .expect("q coefficients serialize")
}

fn orderpoly(
    g: &Global,
    poset: Option<&PathBuf>,
    k: usize,
    flavor: Flavor,
    q: bool,
    closed: bool,
    perm: Option<&str>,
) -> Result<Output> {
    if g.format == Format::Csv {
        return no_csv("orderpoly");
    }
    let owned: AnyPoset = match (poset, perm) {
        (Some(path), _) => read_poset(path)?,
        (None, Some(w)) if flavor == Flavor::Ordinary => Poset::chain(&w.parse()?).into(),
        (None, Some(w)) => BPoset::chain(&w.parse()?).into(),
        (None, None) => {
            return Err(Error::InvalidArgument(
                "one of --poset, --perm is required".into(),
            ))
        }
    };
    let pref: PosetRef = match &owned {
        AnyPoset::A(p) => p.into(),
        AnyPoset::B(p) => p.into(),
    };
    let (oracle_json, oracle_text) = if q {
        let p = q_count_partitions(pref, k, flavor)?;
        (q_json(&p), p.to_string())
    } else {
        let c = count_partitions(pref, k, flavor)?;
        (json!(c.to_string()), c.to_string())
    };
    if !closed {
        return Ok(Output::ok(match g.format {
            Format::Json => {
                json!({ "k": k, "flavor": flavor_name(flavor), "oracle": oracle_json }).to_string()
            }
            _ => oracle_text,
        }));
    }
    let window = match &owned {
        AnyPoset::A(_) => perm
            .expect("closed requires perm")
            .parse::<Permutation>()?
            .packed(),
        AnyPoset::B(_) => perm
            .expect("closed requires perm")
            .parse::<SignedPermutation>()?
            .packed(),
    };
    let (closed_json, closed_text) = if q {
        let p = q_order_poly_closed(&window, k, flavor)?;
        (q_json(&p), p.to_string())
    } else {
        let c = order_poly_closed(&window, k, flavor)?;
        (json!(c.to_string()), c.to_string())
    };
    let agree = closed_json == oracle_json;
    let text = match g.format {
        Format::Json => json!({
            "perm": window.to_vec(),
            "k": k,
            "flavor": flavor_name(flavor),
            "closed": closed_json,
            "oracle": oracle_json,
            "agree": agree,
        })
        .to_string(),
        _ => format!("closed: {closed_text}\noracle: {oracle_text}\nagree: {agree}\n"),
    };
    Ok(Output {
        text,
        code: if agree { EXIT_OK } else { EXIT_FAIL },
    })
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Ordinary => "ordinary",
        Flavor::TypeB => "typeb",
        Flavor::Augmented => "aug",
    }
}

fn linext(g: &Global, path: &PathBuf) -> Result<Output> {
    let windows: Vec<Vec<i32>> = match read_poset(path)? {
        AnyPoset::A(p) => p
            .linear_extensions()?
            .iter()
            .map(|e| e.packed().to_vec())
            .collect(),
        AnyPoset::B(p) => p
            .linear_extensions()?
            .iter()
            .map(|e| e.packed().to_vec())
            .collect(),
    };
    let join = |w: &Vec<i32>| w.iter().map(i32::to_string).collect::<Vec<_>>().join(",");
    Ok(Output::ok(match g.format {
        Format::Json => json!(windows).to_string(),
        Format::Text => windows.iter().map(|w| join(w) + "\n").collect(),
        Format::Csv => std::iter::once("perm\n".to_string())
            .chain(windows.iter().map(|w| format!("\"{}\"\n", join(w))))
            .collect(),
    }))
}

/// Element JSON, with a `decimal` field on each term under `--decimal`.
fn element_value(g: &Global, e: &Element) -> Result<Value> {
    let mut v = serde_json::to_value(e.to_json_value())?;
    if let Some(p) = g.decimal {
        for term in v["terms"].as_array_mut().expect("terms is an array") {
            let c: Rational = term["coeff"]
                .as_str()
                .expect("rational coefficient")
                .parse()?;
            term["decimal"] = json!(c.to_decimal(p));
        }
    }
    Ok(v)
}

fn element_text(g: &Global, e: &Element) -> String {
    let mut s = String::new();
    for (w, c) in e.terms() {
        match g.decimal {
            Some(p) => s.push_str(&format!("{w}\t{c}\t{}\n", c.to_decimal(p))),
            None => s.push_str(&format!("{w}\t{c}\n")),
        }
    }
    s
}

fn element_output(g: &Global, e: &Element) -> Result<String> {
    match g.format {
        Format::Json => Ok(element_value(g, e)?.to_string()),
        Format::Text => Ok(element_text(g, e)),
        Format::Csv => {
            let mut s = String::from(if g.decimal.is_some() {
                "perm,coeff,decimal\n"
            } else {
                "perm,coeff\n"
            });
            for (w, c) in e.terms() {
                s.push_str(&format!("\"{w}\",{c}"));
                if let Some(p) = g.decimal {
                    s.push_str(&format!(",{}", c.to_decimal(p)));
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}

fn report_output(g: &Global, report: VerificationReport) -> Result<Output> {
    let report = if g.no_timing {
        report.without_timing()
    } else {
        report
    };
    let code = if report.pass { EXIT_OK } else { EXIT_FAIL };
    let text = match g.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut s = format!(
                "{} n={}: {} ({} points, {} ms)\n",
                report.identity,
                report.n,
                if report.pass { "pass" } else { "FAIL" },
                report.grid.len(),
                report.millis
            );
            if let Some(c) = &report.counterexample {
                s.push_str(&format!(
                    "  {} at ({}) perm {:?}: lhs {} rhs {}\n",
                    c.check,
                    c.point.join(", "),
                    c.perm,
                    c.lhs,
                    c.rhs
                ));
            }
            s
        }
        Format::Csv => return no_csv("verify"),
    };
    Ok(Output { text, code })
}

fn shuffle(g: &Global, n: usize, a: Option<u64>, m: Option<u32>, tvd: bool) -> Result<Output> {
    if tvd {
        let rows = tvd_table(n, m.expect("clap requires --m with --tvd"))?;
        let places = g.decimal.unwrap_or(TVD_PLACES);
        return Ok(Output::ok(match g.format {
            Format::Csv => tvd_csv(&rows, places),
            Format::Json => Value::Array(
                rows.iter()
                    .map(|(m, t)| json!({ "m": m, "tvd": t.to_decimal(places), "tvd_exact": t.to_string() }))
                    .collect(),
            )
            .to_string(),
            Format::Text => rows.iter().map(|(m, t)| format!("{m}\t{}\t{t}\n", t.to_decimal(places))).collect(),
        }));
    }
    let d = match (a, m) {
        (Some(a), _) => a_shuffle_distribution(n, a)?,
        (None, Some(m)) => repeated_shuffle(n, m)?,
        (None, None) => unreachable!("clap requires --a or --m"),
    };
    Ok(Output::ok(match (g.format, g.decimal) {
        (Format::Json, None) => d.to_json()?,
        (Format::Csv, None) => d.to_csv()?,
        (format, places) => {
            let entries = d.entries()?;
            let places = places.unwrap_or(TVD_PLACES);
            match format {
                Format::Json => Value::Array(
                    entries
                        .iter()
                        .map(|(w, p)| json!({ "perm": w.to_vec(), "p": p.to_string(), "decimal": p.to_decimal(places) }))
                        .collect(),
                )
                .to_string(),
                Format::Csv => std::iter::once("perm,probability,decimal\n".to_string())
                    .chain(entries.iter().map(|(w, p)| format!("\"{w}\",{p},{}\n", p.to_decimal(places))))
                    .collect(),
                Format::Text => entries
                    .iter()
                    .map(|(w, p)| format!("{w}\t{p}\t{}\n", p.to_decimal(places)))
                    .collect(),
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("descent").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn stats_example() {
        let (code, out, _) = call(&["stats", "--perm", "1,4,3,2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["des_set"], json!([2, 3]));
        assert_eq!(v["cdes_set"], json!([2, 3, 4]));
    }

    #[test]
    fn signed_stats() {
        let (code, out, _) = call(&["stats", "--perm", "-2,1", "--signed"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["acomaj"], json!(2));
    }

    #[test]
    fn eulerian_cyclic() {
        assert_eq!(
            call(&["eulerian", "--n", "3", "--kind", "cyclic"]).1.trim(),
            "[3,3]"
        );
    }

    #[test]
    fn verify_b_rank_one() {
        let (code, out, _) = call(&["verify", "--n", "1", "--identity", "b", "--no-timing"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], json!(true));
        assert_eq!(v["millis"], json!(0));
        assert_eq!(v["grid"][0], json!(["1/1", "1/1"]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["eulerian", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["verify", "--n", "3", "--identity", "nope"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["stats", "--perm", "1,1"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn capacity_exits_three() {
        let (code, _, err) = call(&["eulerian", "--n", "12", "--kind", "a"]);
        assert_eq!(code, EXIT_CAPACITY, "{err}");
    }

    #[test]
    fn failing_identity_exits_one() {
        assert_eq!(
            call(&["verify", "--n", "2", "--identity", "theta-literal"]).0,
            EXIT_FAIL
        );
    }

    #[test]
    fn shuffle_tvd_csv() {
        let (code, out, _) = call(&[
            "shuffle", "--n", "2", "--m", "1", "--tvd", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        // one 2-shuffle of two cards: (3/4, 1/4) against (1/2, 1/2)
        assert_eq!(out, "m,tvd,tvd_exact\n1,0.250000000000,1/4\n");
    }

    #[test]
    fn threads_do_not_change_output() {
        let one = call(&[
            "verify",
            "--n",
            "3",
            "--identity",
            "aug",
            "--no-timing",
            "--threads",
            "1",
        ]);
        let four = call(&[
            "verify",
            "--n",
            "3",
            "--identity",
            "aug",
            "--no-timing",
            "--threads",
            "4",
        ]);
        assert_eq!(one, four);
    }

    #[test]
    fn element_with_decimal() {
        let (code, out, _) = call(&[
            "element",
            "--n",
            "2",
            "--kind",
            "a",
            "--structure",
            "1/2",
            "--decimal",
            "3",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["terms"][1]["coeff"], json!("-1/8"));
        assert_eq!(v["terms"][1]["decimal"], json!("-0.125"));
    }
}
