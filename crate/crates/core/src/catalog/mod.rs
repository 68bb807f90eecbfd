//! A catalog of transform identities kept as executable checks.
//!
//! Each entry pairs two computation plans, one per side of a stated
//! identity, together with the points at which the audit checks them and
//! how strictly. Entries the crate vouches for are marked must-pass; the
//! rest are audits, kept because their stated closed forms deserve a
//! number next to them, whichever way the comparison goes. Some entries
//! also carry alternative right-hand sides (a disputed constant or
//! exponent); when the primary form fails and a documented alternative
//! passes, the outcome says exactly that.

mod plan;
mod records;
mod report;
mod verify;

pub use plan::{Factor, FuncSpec, KindSpec, Plan, PlanStrategy};
pub use records::builtin_catalog;
pub use report::{report_from_json, report_to_csv, report_to_json};
pub use verify::{audit, summarize, verify_record};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, ParamMap};

/// How strongly the catalog vouches for an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    /// Load-bearing: a failure is a defect in this crate.
    #[serde(rename = "must_pass")]
    MustPass,
    /// Checked and reported, whatever the outcome.
    #[serde(rename = "audit")]
    Audit,
}

impl Expected {
    pub fn word(self) -> &'static str {
        match self {
            Expected::MustPass => "must_pass",
            Expected::Audit => "audit",
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// How the left side is read when the statement leaves room: as the direct
/// integral, through the nested transforms it came from, or as a damped
/// limit of a conditionally convergent integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interpretation {
    #[serde(rename = "direct")]
    Direct,
    #[serde(rename = "iterated")]
    Iterated,
    #[serde(rename = "abel")]
    Abel,
}

impl Interpretation {
    pub fn word(self) -> &'static str {
        match self {
            Interpretation::Direct => "direct",
            Interpretation::Iterated => "iterated",
            Interpretation::Abel => "abel",
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// One concrete binding of a record's free variables and function slots.
#[derive(Debug, Clone)]
pub struct Case {
    /// Transform order for order-generic records.
    pub n: Option<u32>,
    /// Scalar bindings. Includes n when set, so expressions can use it.
    pub params: ParamMap,
    /// Function slots referenced by the plans.
    pub funcs: BTreeMap<&'static str, Expr>,
    /// Stable display label; also the `case` field of outcome rows.
    pub label: String,
}

/// One identity, stored as two executable plans plus bookkeeping.
#[derive(Debug, Clone)]
pub struct IdentityRecord {
    /// Short stable handle, e.g. "R4" or "E5".
    pub id: &'static str,
    /// One-line description of what is being checked.
    pub title: &'static str,
    /// Citation key of the statement this record encodes.
    pub anchor: &'static str,
    /// The identity in the catalog's own notation.
    pub statement: &'static str,
    pub expected: Expected,
    pub interpretation: Interpretation,
    /// Comparison tolerance floor. Requested tolerances below it are
    /// clamped up: stacked quadratures cannot honestly certify more.
    pub tol: f64,
    /// Free variables of the statement with their admissible ranges.
    pub free_vars: &'static [(&'static str, &'static str)],
    /// Points the audit checks by default.
    pub cases: Vec<Case>,
    pub lhs: Plan,
    pub rhs: Plan,
    /// Alternative right-hand sides worth checking alongside the primary,
    /// each with a short label saying where it comes from.
    pub variants: Vec<(&'static str, Plan)>,
    /// Optional damped-limit reading of the left side, cross-checked
    /// against the primary reading when present.
    pub abel: Option<Plan>,
    /// Background worth keeping next to the numbers.
    pub note: &'static str,
}

/// Find a record by id, case-insensitively.
pub fn find<'a>(catalog: &'a [IdentityRecord], id: &str) -> Option<&'a IdentityRecord> {
    catalog.iter().find(|r| r.id.eq_ignore_ascii_case(id))
}

/// Verdict for one record at one case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    /// The primary right side fails but a documented alternative passes.
    #[serde(rename = "conditional")]
    Conditional,
}

impl OutcomeStatus {
    pub fn word(self) -> &'static str {
        match self {
            OutcomeStatus::Pass => "pass",
            OutcomeStatus::Fail => "fail",
            OutcomeStatus::Conditional => "conditional",
        }
    }
}

impl fmt::Display for OutcomeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// One verified (record, case) pair. The value fields serialize through
/// [`report::nanf`] so a broken row (NaN sides) survives a JSON round trip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub id: String,
    pub case: String,
    pub expected: Expected,
    #[serde(with = "report::nanf")]
    pub lhs: f64,
    #[serde(with = "report::nanf")]
    pub rhs: f64,
    #[serde(with = "report::nanf")]
    pub abs_err: f64,
    #[serde(with = "report::nanf")]
    pub rel_err: f64,
    #[serde(with = "report::nanf")]
    pub lhs_err_est: f64,
    #[serde(with = "report::nanf")]
    pub rhs_err_est: f64,
    /// Total integrand evaluations spent on this row, inner quadratures
    /// and variant checks included.
    pub evals: u64,
    /// Effective comparison tolerance after the record floor.
    pub tol: f64,
    pub status: OutcomeStatus,
    pub note: String,
}

/// A full audit: summary counts plus every outcome row, in catalog order.
/// Carries no timestamps or machine identity; two runs of the same build
/// produce identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Requested base tolerance (records may clamp it up per row).
    pub tol: f64,
    pub records: usize,
    pub cases: usize,
    pub pass: usize,
    pub fail: usize,
    pub conditional: usize,
    pub must_pass_failures: usize,
    pub outcomes: Vec<VerificationOutcome>,
}
