//! Flat, serializable records of individual checks and scan verdicts.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::groups::{Family, GroupId};

pub(crate) fn ser_decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub(crate) fn ser_ratio<S: Serializer>(k: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_ratio(k))
}

/// `num/den`, or just `num` for integers.
pub fn format_ratio(k: &Ratio<u64>) -> String {
    if *k.denom() == 1 {
        k.numer().to_string()
    } else {
        format!("{}/{}", k.numer(), k.denom())
    }
}

/// Outcome of one checked cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// Fails, but is one of the listed exceptions.
    Expected,
    Fail,
    /// The cell could not be computed (e.g. factorization budget exhausted).
    Error,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Expected => "expected",
            Outcome::Fail => "fail",
            Outcome::Error => "error",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// One result row: which group, which prime, what was computed, the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub family: Option<Family>,
    pub n: Option<u32>,
    pub q: Option<u64>,
    pub r: Option<String>,
    pub op: &'static str,
    /// Named outputs, integers in decimal and rationals as `num/den`.
    pub values: Vec<(&'static str, String)>,
    pub outcome: Outcome,
}

impl CheckRecord {
    pub fn new(op: &'static str) -> Self {
        CheckRecord {
            family: None,
            n: None,
            q: None,
            r: None,
            op,
            values: Vec::new(),
            outcome: Outcome::Pass,
        }
    }

    pub fn for_group(op: &'static str, g: &GroupId) -> Self {
        CheckRecord {
            family: Some(g.family()),
            n: g.rank(),
            q: g.q_value(),
            ..Self::new(op)
        }
    }

    pub fn with_r(mut self, r: &BigUint) -> Self {
        self.r = Some(r.to_string());
        self
    }

    pub fn value(mut self, key: &'static str, v: impl ToString) -> Self {
        self.values.push((key, v.to_string()));
        self
    }

    pub fn outcome(mut self, outcome: Outcome) -> Self {
        self.outcome = outcome;
        self
    }
}

/// Overall verdict of a check over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every cell passed (exceptions, where allowed, matched exactly).
    Pass,
    /// Some cell failed unexpectedly, or an expected exception was not found.
    Violation,
    /// Some cell could not be computed.
    ComputationFailed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Violation => "violation",
            Verdict::ComputationFailed => "computation_failed",
        }
    }
}

/// Records of a check run and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub grid: String,
    pub records: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl CheckReport {
    /// Verdict derived from the outcomes of `records`; `expected` outcomes
    /// count as failures unless `allow_expected`.
    pub fn from_records(check: &str, grid: String, records: Vec<CheckRecord>, allow_expected: bool) -> Self {
        let verdict = verdict_of(&records, allow_expected);
        CheckReport { check: check.to_string(), grid, records, verdict }
    }

    /// Concatenates reports in order; the verdict is the most severe one.
    pub fn merge(check: &str, parts: Vec<CheckReport>) -> Self {
        let severity = |v: Verdict| match v {
            Verdict::Pass => 0,
            Verdict::Violation => 1,
            Verdict::ComputationFailed => 2,
        };
        let verdict = parts
            .iter()
            .map(|p| p.verdict)
            .max_by_key(|v| severity(*v))
            .unwrap_or(Verdict::Pass);
        let grid = parts.iter().map(|p| p.grid.as_str()).collect::<Vec<_>>().join("; ");
        let records = parts.into_iter().flat_map(|p| p.records).collect();
        CheckReport { check: check.to_string(), grid, records, verdict }
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.records.iter().filter(|r| r.outcome == outcome).count()
    }
}

pub(crate) fn verdict_of(records: &[CheckRecord], allow_expected: bool) -> Verdict {
    if records.iter().any(|r| r.outcome == Outcome::Error) {
        Verdict::ComputationFailed
    } else if records
        .iter()
        .any(|r| r.outcome == Outcome::Fail || (!allow_expected && r.outcome == Outcome::Expected))
    {
        Verdict::Violation
    } else {
        Verdict::Pass
    }
}
