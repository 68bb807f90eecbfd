//! Output shaping: aligned tables for reading, JSON and CSV for tooling.
//! Numeric tokens in JSON and CSV come from the same formatter, so the two
//! encodings of one run agree field for field.

use gptrans_core::catalog::{IdentityRecord, VerificationReport};
use gptrans_core::quad::{QuadResult, QuadStatus, Strategy};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One evaluation for the eval/quad commands; `point` is None for plain
/// quadrature, which has no transform variable.
pub struct EvalRow {
    pub point: Option<f64>,
    pub result: QuadResult,
}

pub fn strategy_word(s: Strategy) -> &'static str {
    match s {
        Strategy::Auto => "auto",
        Strategy::Decay => "decay",
        Strategy::Algebraic => "algebraic",
        Strategy::Oscillatory => "oscillatory",
        Strategy::Abel => "abel",
    }
}

pub fn status_word(s: QuadStatus) -> &'static str {
    match s {
        QuadStatus::Converged => "converged",
        QuadStatus::MaxEvals => "max_evals",
        QuadStatus::DivergentSuspected => "divergent_suspected",
    }
}

/// Shortest round-trip token, shared with the JSON encoder.
fn num(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite float")
    } else {
        "null".to_owned()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn eval_rows(format: Format, rows: &[EvalRow]) -> String {
    match format {
        Format::Table => eval_table(rows),
        Format::Json => eval_json(rows),
        Format::Csv => eval_csv(rows),
    }
}

fn eval_table(rows: &[EvalRow]) -> String {
    let with_point = rows.iter().any(|r| r.point.is_some());
    let mut out = String::new();
    if with_point {
        out.push_str(&format!(
            "{:<10} {:<22} {:<10} {:>9}  {:<12} {}\n",
            "point", "value", "err_est", "evals", "strategy", "status"
        ));
    } else {
        out.push_str(&format!(
            "{:<22} {:<10} {:>9}  {:<12} {}\n",
            "value", "err_est", "evals", "strategy", "status"
        ));
    }
    for row in rows {
        let r = &row.result;
        let value = format!("{:.12e}", r.value);
        let err = format!("{:.1e}", r.err_est);
        let tail = format!(
            "{:<22} {:<10} {:>9}  {:<12} {}\n",
            value,
            err,
            r.evals,
            strategy_word(r.strategy_used),
            status_word(r.status)
        );
        if with_point {
            out.push_str(&format!("{:<10} ", row.point.unwrap_or(f64::NAN)));
        }
        out.push_str(&tail);
    }
    out
}

fn eval_json(rows: &[EvalRow]) -> String {
    let items: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let r = &row.result;
            let mut obj = serde_json::json!({
                "value": r.value,
                "err_est": r.err_est,
                "evals": r.evals,
                "strategy": strategy_word(r.strategy_used),
                "status": status_word(r.status),
            });
            if let Some(p) = row.point {
                obj["point"] = serde_json::json!(p);
            }
            obj
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&items).expect("eval rows");
    s.push('\n');
    s
}

fn eval_csv(rows: &[EvalRow]) -> String {
    let with_point = rows.iter().any(|r| r.point.is_some());
    let mut out = String::new();
    if with_point {
        out.push_str("point,value,err_est,evals,strategy,status\n");
    } else {
        out.push_str("value,err_est,evals,strategy,status\n");
    }
    for row in rows {
        let r = &row.result;
        if with_point {
            out.push_str(&num(row.point.unwrap_or(f64::NAN)));
            out.push(',');
        }
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            num(r.value),
            num(r.err_est),
            r.evals,
            strategy_word(r.strategy_used),
            status_word(r.status)
        ));
    }
    out
}

pub fn list(format: Format, catalog: &[IdentityRecord]) -> String {
    match format {
        Format::Table => {
            let mut out = format!(
                "{:<5} {:<19} {:<10} {:>5}  {}\n",
                "id", "anchor", "expected", "cases", "title"
            );
            for rec in catalog {
                out.push_str(&format!(
                    "{:<5} {:<19} {:<10} {:>5}  {}\n",
                    rec.id,
                    rec.anchor,
                    rec.expected.word(),
                    rec.cases.len(),
                    rec.title
                ));
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = catalog
                .iter()
                .map(|rec| {
                    serde_json::json!({
                        "id": rec.id,
                        "anchor": rec.anchor,
                        "expected": rec.expected.word(),
                        "interpretation": rec.interpretation.word(),
                        "cases": rec.cases.len(),
                        "title": rec.title,
                        "statement": rec.statement,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("list rows");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out =
                String::from("id,anchor,expected,interpretation,cases,title,statement\n");
            for rec in catalog {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    rec.id,
                    csv_field(rec.anchor),
                    rec.expected.word(),
                    rec.interpretation.word(),
                    rec.cases.len(),
                    csv_field(rec.title),
                    csv_field(rec.statement)
                ));
            }
            out
        }
    }
}

pub fn report(format: Format, report: &VerificationReport) -> String {
    match format {
        Format::Table => report_table(report),
        Format::Json => gptrans_core::catalog::report_to_json(report),
        Format::Csv => gptrans_core::catalog::report_to_csv(report),
    }
}

fn report_table(report: &VerificationReport) -> String {
    let mut out = format!(
        "{:<5} {:<38} {:<10} {:<12} {:<17} {:<17} {:<10} {}\n",
        "id", "case", "expected", "status", "lhs", "rhs", "rel_err", "evals"
    );
    for o in &report.outcomes {
        out.push_str(&format!(
            "{:<5} {:<38} {:<10} {:<12} {:<17} {:<17} {:<10} {}\n",
            o.id,
            o.case,
            o.expected.word(),
            o.status.word(),
            format!("{:+.9e}", o.lhs),
            format!("{:+.9e}", o.rhs),
            format!("{:.2e}", o.rel_err),
            o.evals
        ));
        if !o.note.is_empty() {
            out.push_str(&format!("      note: {}\n", o.note));
        }
    }
    out.push_str(&format!(
        "records {}  cases {}  pass {}  fail {}  conditional {}  must-pass failures {}\n",
        report.records,
        report.cases,
        report.pass,
        report.fail,
        report.conditional,
        report.must_pass_failures
    ));
    out
}
