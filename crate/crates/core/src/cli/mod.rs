//! Command-line front end. `run_with_io` is the whole program; the binary
//! only forwards `std::env::args`.
//!
//! Exit codes: 0 success, 1 domain error, 2 precision or size budget
//! exhausted, 3 golden-table or selfcheck mismatch, 64 usage.

mod emit;
mod parse;
pub mod selfcheck;
pub mod tables;

pub use emit::{padic_json, report_json};
pub use parse::parse_polynomial;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::Prime;
use crate::curves::{
    base_extend, class_number, class_tower_levels, class_tower_with, classify, frobenius_poly,
    point_count_extension, EllipticCurveSpec, MAX_FIELD,
};
use crate::error::{Error, Result};
use crate::knots::{
    alexander_torus, alexander_twist, composite_tower_with, homology_order, livingston_predicate,
    KnotPolynomial, TorusKnotSpec, TwistKnotSpec,
};
use crate::limits::{compute_limit, iwasawa_invariants, Method, DEFAULT_PRECISION};
use crate::poly::cyclic_resultant;

pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "padic-limits", version, about = "p-adic limits of cyclic resultants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Md,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Sequence,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Sequence => Method::Sequence,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact Res(t^n - 1, f)
    Res {
        #[arg(short = 'f', allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'n')]
        n: u64,
    },
    /// p-adic limit of Res(t^(p^n) - 1, f)
    Limit {
        #[arg(short = 'f', allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'N', default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Iwasawa invariants lambda, mu, nu
    Invariants {
        #[arg(short = 'f', allow_hyphen_values = true)]
        poly: String,
        #[arg(short = 'p')]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Knot towers
    Knot {
        #[command(subcommand)]
        knot: KnotCommand,
    },
    /// Elliptic curves y^2 = x^3 + a x + b over F_l
    Curve(CurveArgs),
    /// Golden tables
    Table {
        #[command(subcommand)]
        action: TableCommand,
    },
    /// Randomized formula-versus-oracle comparison
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'N', default_value_t = 6)]
        precision: u32,
    },
}

#[derive(Debug, Subcommand)]
enum KnotCommand {
    /// Torus knot T(a, b)
    Torus {
        #[arg(short = 'a')]
        a: u64,
        #[arg(short = 'b')]
        b: u64,
        #[command(subcommand)]
        action: KnotAction,
    },
    /// Twist knot J(2, 2m)
    Twist {
        #[arg(short = 'm', allow_negative_numbers = true)]
        m: i64,
        #[command(subcommand)]
        action: KnotAction,
    },
    /// Alexander polynomial given directly
    Poly {
        #[arg(short = 'f', allow_hyphen_values = true)]
        poly: String,
        /// accept polynomials with Δ(1) != ±1
        #[arg(long)]
        unchecked: bool,
        #[command(subcommand)]
        action: KnotAction,
    },
}

#[derive(Debug, Subcommand)]
enum KnotAction {
    /// Homology tower over the covers of degree m p^n
    Tower {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'm', default_value_t = 1)]
        multiplier: u64,
        #[arg(short = 'N', default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        /// number of exact levels to list (default: min(N, 6))
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// |H_1| of the n-fold cyclic cover
    Order {
        #[arg(short = 'n')]
        n: u64,
    },
    /// Whether every cover of prime-power degree is a homology sphere, by the cyclotomic criterion
    Livingston {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long = "l")]
    l: u64,
    #[arg(long = "a", allow_negative_numbers = true)]
    a: i64,
    #[arg(long = "b", allow_negative_numbers = true)]
    b: i64,
    /// work over F_(l^ext)
    #[arg(long, default_value_t = 1)]
    ext: u64,
    #[command(subcommand)]
    action: CurveAction,
}

#[derive(Debug, Subcommand)]
enum CurveAction {
    /// Number of points over F_(l^ext)
    Count,
    /// Frobenius and L-polynomial over F_(l^ext)
    Frobenius {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Supersingular, anomalous or ordinary
    Classify {
        /// CM discriminant D < 0 to cross-check with (D/l)
        #[arg(long, allow_negative_numbers = true)]
        cm: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Class numbers along F_(l^(ext p^n))
    Tower {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'N', default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum TableCommand {
    List,
    Run {
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

/// Parse `args` (program name first), run, write results to `out` and
/// diagnostics to `err`, and return the exit code.
pub fn run_with_io<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<i32> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<i32> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(v).expect("json")))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Res { poly, n } => {
            let f = parse_polynomial(&poly)?;
            emit(out, &format!("{}\n", cyclic_resultant(&f, n)?))
        }
        Command::Limit { poly, p, precision, method, format } => {
            let f = parse_polynomial(&poly)?;
            let r = compute_limit(&f, prime(p)?, precision, method.into())?;
            match format {
                Format::Json => emit_json(out, &emit::report_json(&r)),
                _ => emit(out, &emit::report_text(&r)),
            }
        }
        Command::Invariants { poly, p, format } => {
            let f = parse_polynomial(&poly)?;
            let i = iwasawa_invariants(&f, prime(p)?)?;
            match format {
                Format::Json => emit_json(out, &emit::invariants_json(&i)),
                _ => emit(out, &format!("{}\n", emit::invariants_text(&i))),
            }
        }
        Command::Knot { knot } => knot_command(knot, out, err),
        Command::Curve(args) => curve_command(args, out),
        Command::Table { action } => table_command(action, out, err),
        Command::Selfcheck { cases, seed, precision } => {
            let s = selfcheck::run_selfcheck(cases, seed, precision);
            let _ = writeln!(
                out,
                "selfcheck seed {seed}: {} agree, {} vanishing towers (limit only), {} failed (N = {precision})",
                s.agreed,
                s.vanishing,
                s.failures.len()
            );
            for (case, why) in &s.failures {
                let _ = writeln!(out, "FAIL case {}: f = {}, p = {}: {why}", case.index, case.f, case.p);
            }
            Ok(if s.passed() { 0 } else { EXIT_MISMATCH })
        }
    }
}

fn knot_command(cmd: KnotCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (knot, action) = match cmd {
        KnotCommand::Torus { a, b, action } => (alexander_torus(TorusKnotSpec::new(a, b)?)?, action),
        KnotCommand::Twist { m, action } => (alexander_twist(TwistKnotSpec::new(m)?), action),
        KnotCommand::Poly { poly, unchecked, action } => {
            let f = parse_polynomial(&poly)?;
            let k = if unchecked { KnotPolynomial::user_unchecked(f)? } else { KnotPolynomial::user(f)? };
            (k, action)
        }
    };
    match action {
        KnotAction::Tower { p, multiplier, precision, levels, method, format } => {
            let levels = levels.unwrap_or(precision.min(6));
            let t = composite_tower_with(&knot, multiplier, prime(p)?, precision, method.into(), levels)?;
            // text output carries the warning itself
            if let (Some(w), Format::Json | Format::Csv) = (&t.warning, format) {
                let _ = writeln!(err, "warning: {w}");
            }
            match format {
                Format::Json => emit_json(out, &emit::tower_json(&t)),
                Format::Csv => emit(out, &emit::levels_csv(&t.levels)),
                _ => emit(out, &emit::tower_text(&t)),
            }
        }
        KnotAction::Order { n } => emit(out, &format!("{}\n", homology_order(&knot, n)?)),
        KnotAction::Livingston { format } => {
            let c = livingston_predicate(&knot)?;
            match format {
                Format::Json => emit_json(out, &emit::livingston_json(&c)),
                _ => emit(out, &emit::livingston_text(&c)),
            }
        }
    }
}

fn curve_command(args: CurveArgs, out: &mut dyn Write) -> Result<i32> {
    let e = EllipticCurveSpec::new(args.l, args.a, args.b)?;
    let data = base_extend(&frobenius_poly(&e)?, args.ext)?;
    match args.action {
        CurveAction::Count => {
            let n = class_number(&data, 1)?;
            let mut line = format!("{n}");
            let small = u32::try_from(args.ext).ok().filter(|&k| args.l.checked_pow(k).is_some_and(|q| q <= MAX_FIELD));
            if let Some(k) = small {
                let brute = point_count_extension(&e, k)?;
                if num_bigint::BigInt::from(brute) != n {
                    return Err(Error::InvariantViolation(format!(
                        "L-polynomial gives {n} points, enumeration gives {brute}"
                    )));
                }
                line.push_str("  (enumeration agrees)");
            }
            emit(out, &format!("{line}\n"))
        }
        CurveAction::Frobenius { format } => match format {
            Format::Json => emit_json(out, &emit::lpoly_json(&data)),
            _ => emit(
                out,
                &format!("q = {}\nF(t) = {}\nL(t) = {}\nclass number L(1) = {}\n", data.q, data.frobenius, data.l_poly, data.class_number()),
            ),
        },
        CurveAction::Classify { cm, format } => {
            let c = classify(&e, cm)?;
            match format {
                Format::Json => emit_json(out, &emit::classification_json(&c)),
                _ => emit(out, &format!("{}  (count {}, trace {})\n", c.kind, c.count, c.trace)),
            }
        }
        CurveAction::Tower { p, precision, levels, method, format } => {
            let p = prime(p)?;
            let r = class_tower_with(&e, args.ext, p, precision, method.into())?;
            let lv = class_tower_levels(&e, args.ext, p, levels.unwrap_or(precision.min(6)))?;
            match format {
                Format::Json => {
                    let mut v = emit::report_json(&r);
                    v["frobenius"] = serde_json::Value::String(data.frobenius.to_string());
                    v["levels"] = lv.iter().map(emit::level_json).collect();
                    emit_json(out, &v)
                }
                Format::Csv => emit(out, &emit::levels_csv(&lv)),
                _ => emit(
                    out,
                    &format!(
                        "F(t) = {}\n{}\n{}",
                        data.frobenius,
                        emit::report_text(&r),
                        emit::levels_markdown(&lv, "class number")
                    ),
                ),
            }
        }
    }
}

fn table_command(cmd: TableCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        TableCommand::List => {
            let mut s = String::new();
            for t in tables::registry() {
                s.push_str(&format!("{:<14} {}\n", t.id, t.description));
            }
            emit(out, &s)
        }
        TableCommand::Run { id, all, format } => {
            let outcomes = match (id, all) {
                (None, true) => tables::run_all(),
                (Some(id), false) => {
                    let t = tables::find(&id)
                        .ok_or_else(|| Error::InvalidArgument(format!("unknown table {id}; see `table list`")))?;
                    vec![tables::run(t)]
                }
                _ => return Err(Error::InvalidArgument("give a table id or --all".into())),
            };
            let text = match format {
                Format::Json => {
                    let v: Vec<_> = outcomes.iter().map(emit::table_json).collect();
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
                Format::Csv => {
                    let mut s = emit::table_csv_header().to_string();
                    outcomes.iter().for_each(|o| s.push_str(&emit::table_csv(o)));
                    s
                }
                Format::Md | Format::Text => {
                    outcomes.iter().map(emit::table_markdown).collect::<Vec<_>>().join("\n")
                }
            };
            emit(out, &text)?;
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
            if failed.is_empty() {
                Ok(0)
            } else {
                let _ = writeln!(err, "golden mismatch: {}", failed.join(", "));
                Ok(EXIT_MISMATCH)
            }
        }
    }
}
