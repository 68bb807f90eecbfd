//! Report serialization: JSON both ways, CSV out.
//!
//! Numeric cells in the CSV are printed with the same shortest
//! round-trip formatter JSON uses, so the two outputs agree token for
//! token and diff cleanly across runs.

use serde::{Deserialize, Deserializer, Serializer};

use super::{VerificationOutcome, VerificationReport};

/// JSON has no NaN literal; serialize it as null and read null back as
/// NaN so a report with a broken row still round-trips.
pub(super) mod nanf {
    use super::*;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

pub fn report_to_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}

pub fn report_from_json(text: &str) -> Result<VerificationReport, serde_json::Error> {
    serde_json::from_str(text)
}

fn num(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite float")
    } else {
        "null".to_owned()
    }
}

const CSV_HEADER: [&str; 13] = [
    "id",
    "case",
    "expected",
    "lhs",
    "rhs",
    "abs_err",
    "rel_err",
    "lhs_err_est",
    "rhs_err_est",
    "evals",
    "tol",
    "status",
    "note",
];

pub fn report_to_csv(report: &VerificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("csv header");
    for row in &report.outcomes {
        write_row(&mut w, row);
    }
    let bytes = w.into_inner().expect("csv flush");
    String::from_utf8(bytes).expect("csv is utf-8")
}

fn write_row(w: &mut csv::Writer<Vec<u8>>, row: &VerificationOutcome) {
    w.write_record([
        row.id.as_str(),
        row.case.as_str(),
        row.expected.word(),
        &num(row.lhs),
        &num(row.rhs),
        &num(row.abs_err),
        &num(row.rel_err),
        &num(row.lhs_err_est),
        &num(row.rhs_err_est),
        &row.evals.to_string(),
        &num(row.tol),
        row.status.word(),
        &row.note,
    ])
    .expect("csv row");
}

#[cfg(test)]
mod tests {
    use super::super::{Expected, OutcomeStatus};
    use super::*;

    fn sample_row(lhs: f64) -> VerificationOutcome {
        VerificationOutcome {
            id: "R1".into(),
            case: "y=0.5, f=exp(-x)".into(),
            expected: Expected::MustPass,
            lhs,
            rhs: 0.125,
            abs_err: 1e-12,
            rel_err: 8e-12,
            lhs_err_est: 1e-13,
            rhs_err_est: 2e-13,
            evals: 12345,
            tol: 1e-8,
            status: OutcomeStatus::Pass,
            note: String::new(),
        }
    }

    fn sample_report(lhs: f64) -> VerificationReport {
        VerificationReport {
            tol: 1e-7,
            records: 1,
            cases: 1,
            pass: 1,
            fail: 0,
            conditional: 0,
            must_pass_failures: 0,
            outcomes: vec![sample_row(lhs)],
        }
    }

    #[test]
    fn json_round_trips() {
        let report = sample_report(0.125);
        let back = report_from_json(&report_to_json(&report)).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn nan_rows_survive_json() {
        let report = sample_report(f64::NAN);
        let back = report_from_json(&report_to_json(&report)).unwrap();
        assert!(back.outcomes[0].lhs.is_nan());
        assert_eq!(back.outcomes[0].rhs, 0.125);
    }

    #[test]
    fn csv_header_and_tokens() {
        let report = sample_report(0.125);
        let csv = report_to_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,case,expected,lhs,rhs,abs_err,rel_err,lhs_err_est,rhs_err_est,evals,tol,status,note"
        );
        let row = lines.next().unwrap();
        // The case label holds a comma, so the csv writer must quote it.
        assert!(row.starts_with("R1,\"y=0.5, f=exp(-x)\",must_pass,"));
        assert!(row.contains(",0.125,"));
        assert!(row.contains(",12345,"));
        assert!(lines.next().is_none());
    }

    #[test]
    fn csv_and_json_print_numbers_identically() {
        for v in [0.125, 1e-12, 0.1, 2.0 / 3.0, 1e300] {
            assert_eq!(num(v), serde_json::to_string(&v).unwrap());
        }
        assert_eq!(num(f64::NAN), "null");
        assert_eq!(num(f64::INFINITY), "null");
    }
}
