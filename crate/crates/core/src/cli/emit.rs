//! Text, markdown, CSV and JSON renderings. Integers that can grow are emitted
//! as decimal strings in JSON.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::tables::TableOutcome;
use crate::curves::{CurveClassification, LPolynomialData};
use crate::knots::{HomologyTower, LivingstonBlock, LivingstonCertificate};
use crate::limits::{IwasawaInvariants, LimitReport, NonpLimit, TowerLevel, ZeroReason};
use crate::padic::PadicScalar;

pub fn padic_json(x: &PadicScalar) -> Value {
    match x.valuation() {
        None => json!({
            "p": x.prime().get(),
            "zero_to_precision": true,
            "precision": x.abs_precision(),
        }),
        Some(v) => json!({
            "p": x.prime().get(),
            "valuation": v,
            "unit_digits": x.unit_digits(),
            "precision": x.precision(),
        }),
    }
}

/// `r + O(p^k)`, plus the balanced representative when it is short.
pub fn padic_text(x: &PadicScalar) -> String {
    let mut s = x.to_string();
    if let (Some(v), Ok(b)) = (x.valuation(), x.balanced_residue(x.abs_precision().max(0) as u32)) {
        if v >= 0 && b.sign() == num_bigint::Sign::Minus && b.bits() < 32 {
            let _ = write!(s, "  (= {b} in Z_{})", x.prime());
        }
    }
    s
}

fn zero_reason(z: ZeroReason) -> &'static str {
    match z {
        ZeroReason::Nonzero => "nonzero",
        ZeroReason::Mu => "mu",
        ZeroReason::Lambda => "lambda",
    }
}

pub fn invariants_json(i: &IwasawaInvariants) -> Value {
    json!({
        "lambda": i.lambda,
        "mu": i.mu,
        "nu": i.nu,
        "stabilization": i.stabilization,
    })
}

fn nonp_json(n: &NonpLimit) -> Value {
    match n {
        NonpLimit::Value(v) => padic_json(v),
        NonpLimit::Absent { reason } => json!({ "absent": reason }),
    }
}

pub fn report_json(r: &LimitReport) -> Value {
    let c = &r.classification;
    json!({
        "p": r.p.get(),
        "precision": r.precision,
        "method": r.method.to_string(),
        "limit": padic_json(&r.limit),
        "zero_reason": zero_reason(r.zero_reason),
        "nonp_limit": nonp_json(&r.nonp_limit),
        "xi": padic_json(&r.xi),
        "invariants": r.invariants.as_ref().map(invariants_json),
        "sign_exponent": r.sign_exponent,
        "agreement_digits": r.agreement_digits,
        "classification": {
            "mu": c.mu,
            "large_roots": c.s,
            "small_roots": c.e,
            "unit_roots": c.unit,
            "lambda": c.lambda,
        },
        "cyclotomic_check": r.cyclotomic_check.as_ref().map(|k| json!({
            "m": k.m,
            "expected": k.expected.to_string(),
        })),
    })
}

pub fn report_text(r: &LimitReport) -> String {
    let mut s = String::new();
    let c = &r.classification;
    let _ = writeln!(s, "p = {}, precision = {} digits, method = {}", r.p, r.precision, r.method);
    let _ = writeln!(s, "limit      {}", padic_text(&r.limit));
    if r.zero_reason != ZeroReason::Nonzero {
        let _ = writeln!(s, "           zero because {} > 0", zero_reason(r.zero_reason));
    }
    match &r.nonp_limit {
        NonpLimit::Value(v) => {
            let _ = writeln!(s, "non-p      {}", padic_text(v));
        }
        NonpLimit::Absent { reason } => {
            let _ = writeln!(s, "non-p      absent: {reason}");
        }
    }
    let _ = writeln!(s, "xi         {}", padic_text(&r.xi));
    if let Some(i) = &r.invariants {
        let _ = writeln!(s, "{}", invariants_text(i));
    }
    let _ = writeln!(
        s,
        "roots      mu = {}, |a|>1: {}, |a|<1: {}, units: {}, near 1: {}",
        c.mu, c.s, c.e, c.unit, c.lambda
    );
    if let Some(k) = &r.cyclotomic_check {
        let _ = writeln!(s, "check      f = Phi_{} mod p, limit {} confirmed", k.m, k.expected);
    }
    if let Some(a) = r.agreement_digits {
        let _ = writeln!(s, "engines    agree on {a} digits");
    }
    s
}

pub fn invariants_text(i: &IwasawaInvariants) -> String {
    format!(
        "lambda = {}, mu = {}, nu = {} (law holds from n = {})",
        i.lambda, i.mu, i.nu, i.stabilization
    )
}

fn opt(x: &Option<num_bigint::BigInt>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn level_json(l: &TowerLevel) -> Value {
    json!({
        "n": l.n,
        "level": l.level,
        "resultant": l.resultant.as_ref().map(|v| v.to_string()),
        "order": l.order.as_ref().map(|v| v.to_string()),
        "valuation": l.valuation,
        "modulus_exponent": l.modulus_exponent(),
        "residue": l.residue.to_string(),
        "unit_residue": l.unit_residue.to_string(),
    })
}

/// Markdown table with one column per level.
pub fn levels_markdown(levels: &[TowerLevel], order_label: &str) -> String {
    let mut s = String::new();
    let cols: Vec<String> = levels.iter().map(|l| l.n.to_string()).collect();
    let row = |label: &str, cells: Vec<String>| format!("| {label} | {} |\n", cells.join(" | "));
    s.push_str(&row("n", cols));
    s.push_str(&format!("|---|{}\n", "---|".repeat(levels.len())));
    s.push_str(&row("cover degree", levels.iter().map(|l| l.level.to_string()).collect()));
    s.push_str(&row("Res", levels.iter().map(|l| opt(&l.resultant)).collect()));
    s.push_str(&row(order_label, levels.iter().map(|l| opt(&l.order)).collect()));
    s.push_str(&row("v_p", levels.iter().map(|l| l.valuation.to_string()).collect()));
    s.push_str(&row("Res mod p^n", levels.iter().map(|l| l.residue.to_string()).collect()));
    s.push_str(&row("non-p mod p^n", levels.iter().map(|l| l.unit_residue.to_string()).collect()));
    s
}

pub fn levels_csv(levels: &[TowerLevel]) -> String {
    let mut s = String::from("n,level,resultant,order,valuation,residue,unit_residue\n");
    for l in levels {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            l.n,
            l.level,
            l.resultant.as_ref().map_or_else(String::new, |v| v.to_string()),
            l.order.as_ref().map_or_else(String::new, |v| v.to_string()),
            l.valuation,
            l.residue,
            l.unit_residue
        );
    }
    s
}

pub fn tower_json(t: &HomologyTower) -> Value {
    json!({
        "alexander": t.knot.delta.to_string(),
        "normalized": t.knot.normalized,
        "p": t.p.get(),
        "multiplier": t.multiplier,
        "engine_input": t.engine_input.to_string(),
        "resultant_limit": padic_json(&t.report.limit),
        "homology_sign": t.homology_sign,
        "homology_limit": padic_json(&t.homology_limit),
        "homology_nonp_limit": t.homology_nonp_limit.as_ref().map(padic_json),
        "report": report_json(&t.report),
        "levels": t.levels.iter().map(level_json).collect::<Vec<_>>(),
        "warning": t.warning,
    })
}

pub fn tower_text(t: &HomologyTower) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Alexander polynomial  {}", t.knot.delta);
    if t.multiplier > 1 {
        let _ = writeln!(s, "covers of degree {}*{}^n, engine input {}", t.multiplier, t.p, t.engine_input);
    }
    if let Some(w) = &t.warning {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "limit of Res        {}", padic_text(&t.report.limit));
    let _ = writeln!(
        s,
        "limit of |H_1|      {}  (|H_1| = {}Res for large n)",
        padic_text(&t.homology_limit),
        if t.homology_sign < 0 { "-" } else { "+" }
    );
    if let Some(v) = &t.homology_nonp_limit {
        let _ = writeln!(s, "limit of non-p part {}", padic_text(v));
    }
    if let Some(i) = &t.report.invariants {
        let _ = writeln!(s, "{}", invariants_text(i));
    }
    if let Some(a) = t.report.agreement_digits {
        let _ = writeln!(s, "engines agree on {a} digits");
    }
    if !t.levels.is_empty() {
        s.push('\n');
        s.push_str(&levels_markdown(&t.levels, "|H_1|"));
    }
    s
}

pub fn livingston_json(c: &LivingstonCertificate) -> Value {
    json!({
        "holds": c.holds,
        "shift": c.shift,
        "factors": c.factors.iter().map(|(m, e)| json!({"m": m, "multiplicity": e})).collect::<Vec<_>>(),
        "blocking": c.blocking.as_ref().map(|b| match b {
            LivingstonBlock::FewPrimes { m } => json!({"few_primes": m}),
            LivingstonBlock::NonCyclotomic(f) => json!({"non_cyclotomic": f.to_string()}),
        }),
    })
}

pub fn livingston_text(c: &LivingstonCertificate) -> String {
    let factors: Vec<String> = c
        .factors
        .iter()
        .map(|(m, e)| if *e == 1 { format!("Phi_{m}") } else { format!("Phi_{m}^{e}") })
        .collect();
    let mut s = format!(
        "{}\nfactors: {}\n",
        if c.holds { "trivial homology at every prime-power level" } else { "criterion fails" },
        if factors.is_empty() { "none".to_string() } else { factors.join(" * ") }
    );
    match &c.blocking {
        Some(LivingstonBlock::FewPrimes { m }) => {
            let _ = writeln!(s, "blocked by Phi_{m}: fewer than three primes divide {m}");
        }
        Some(LivingstonBlock::NonCyclotomic(f)) => {
            let _ = writeln!(s, "blocked by the non-cyclotomic factor {f}");
        }
        None => {}
    }
    s
}

pub fn lpoly_json(d: &LPolynomialData) -> Value {
    json!({
        "q": d.q.to_string(),
        "genus": d.genus,
        "frobenius": d.frobenius.to_string(),
        "l_polynomial": d.l_poly.to_string(),
        "class_number": d.class_number().to_string(),
    })
}

pub fn classification_json(c: &CurveClassification) -> Value {
    json!({ "kind": c.kind.to_string(), "count": c.count, "trace": c.trace })
}

pub fn table_markdown(o: &TableOutcome) -> String {
    let mut s = format!("### {} {}\n\n{}\n\n", o.id, if o.passed() { "PASS" } else { "FAIL" }, o.description);
    let _ = writeln!(s, "| | {} |", o.columns.join(" | "));
    let _ = writeln!(s, "|---|{}", "---|".repeat(o.columns.len()));
    let pad = |cells: &[String]| {
        let mut v: Vec<String> = cells.to_vec();
        v.resize(o.columns.len(), String::new());
        v.join(" | ")
    };
    match &o.computed {
        Ok(rows) => {
            for (label, row) in o.row_labels.iter().zip(rows) {
                let _ = writeln!(s, "| {label} | {} |", pad(row));
            }
        }
        Err(e) => {
            let _ = writeln!(s, "\ncomputation failed: {e}");
        }
    }
    for m in &o.mismatches {
        let _ = writeln!(s, "\nmismatch in {} at {}: expected {}, computed {}", m.row, m.column, m.expected, m.computed);
    }
    s
}

fn csv_field(x: &str) -> String {
    if x.contains([',', '"', '\n']) {
        format!("\"{}\"", x.replace('"', "\"\""))
    } else {
        x.to_string()
    }
}

pub fn table_csv_header() -> &'static str {
    "table,row,column,expected,computed,match\n"
}

pub fn table_csv(o: &TableOutcome) -> String {
    let mut s = String::new();
    let computed = o.computed.as_ref().ok();
    for (r, label) in o.row_labels.iter().enumerate() {
        for (c, col) in o.columns.iter().enumerate() {
            let want = o.expected[r].get(c).cloned().unwrap_or_default();
            let got = computed.and_then(|rows| rows.get(r)).and_then(|row| row.get(c)).cloned().unwrap_or_default();
            if want.is_empty() && got.is_empty() {
                continue;
            }
            let ok = want.is_empty() || want == got;
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                o.id,
                csv_field(label),
                csv_field(col),
                csv_field(&want),
                csv_field(&got),
                ok
            );
        }
    }
    s
}

pub fn table_json(o: &TableOutcome) -> Value {
    let rows: Vec<Value> = o
        .row_labels
        .iter()
        .enumerate()
        .map(|(r, label)| {
            json!({
                "label": label,
                "expected": o.expected[r],
                "computed": o.computed.as_ref().ok().and_then(|rows| rows.get(r)),
            })
        })
        .collect();
    json!({
        "id": o.id,
        "description": o.description,
        "passed": o.passed(),
        "columns": o.columns,
        "rows": rows,
        "error": o.computed.as_ref().err(),
        "mismatches": o.mismatches.iter().map(|m| json!({
            "row": m.row,
            "column": m.column,
            "expected": m.expected,
            "computed": m.computed,
        })).collect::<Vec<_>>(),
    })
}
