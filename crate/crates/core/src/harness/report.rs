use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::NRange;
use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::predictors::Standing;

/// The identities a verification campaign can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum TheoremId {
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Thm7,
    Conj1,
    Conj2,
    Strauss,
    Lemma6,
    Lemma8,
    Lemma9,
    EqMa,
    FormulaAgreement,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Thm5,
        TheoremId::Thm6,
        TheoremId::Thm7,
        TheoremId::Conj1,
        TheoremId::Conj2,
        TheoremId::Strauss,
        TheoremId::Lemma6,
        TheoremId::Lemma8,
        TheoremId::Lemma9,
        TheoremId::EqMa,
        TheoremId::FormulaAgreement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm5 => "thm5",
            TheoremId::Thm6 => "thm6",
            TheoremId::Thm7 => "thm7",
            TheoremId::Conj1 => "conj1",
            TheoremId::Conj2 => "conj2",
            TheoremId::Strauss => "strauss",
            TheoremId::Lemma6 => "lemma6",
            TheoremId::Lemma8 => "lemma8",
            TheoremId::Lemma9 => "lemma9",
            TheoremId::EqMa => "eq-ma",
            TheoremId::FormulaAgreement => "formula-agreement",
        }
    }

    pub fn standing(self) -> Standing {
        match self {
            TheoremId::Conj1 | TheoremId::Conj2 => Standing::Conjecture,
            _ => Standing::Theorem,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<TheoremId> for String {
    fn from(t: TheoremId) -> String {
        t.as_str().to_string()
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    CounterexampleFound,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::CounterexampleFound => "counterexample-found",
            Status::Skipped => "skipped",
        }
    }

    /// 0 when everything passed or was skipped, 1 on a mathematical mismatch.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Skipped => 0,
            Status::Fail | Status::CounterexampleFound => 1,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One disagreement, with enough detail to recheck it by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub predicted: String,
    pub actual: String,
    /// Which predictor or side of the identity disagreed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Full exact value, dumped for conjecture counterexamples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<String>,
}

impl Mismatch {
    pub fn new(n: u64, predicted: impl ToString, actual: impl ToString) -> Self {
        Mismatch { n, predicted: predicted.to_string(), actual: actual.to_string(), note: None, exact_value: None }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Prime>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    pub range: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// A theorem id, or `oeis:<name>` for b-file comparisons.
    pub check: String,
    pub parameters: Parameters,
    pub checked: u64,
    /// Indices that could not be compared (e.g. an infinite valuation).
    pub skipped: u64,
    pub mismatches: Vec<Mismatch>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl VerificationReport {
    pub(crate) fn finish(
        check: String,
        standing: Standing,
        p: Option<Prime>,
        r: Option<String>,
        range: Option<NRange>,
        checked: u64,
        skipped: u64,
        mismatches: Vec<Mismatch>,
    ) -> Self {
        let status = match (mismatches.is_empty(), standing) {
            (true, _) => Status::Pass,
            (false, Standing::Conjecture) => Status::CounterexampleFound,
            (false, Standing::Theorem) => Status::Fail,
        };
        VerificationReport {
            check,
            parameters: Parameters { p, r, range: range.map(|r| r.to_string()).unwrap_or_default() },
            checked,
            skipped,
            mismatches,
            status,
            note: None,
            generated_at: None,
        }
    }

    pub fn skipped(check: String, reason: &str) -> Self {
        VerificationReport {
            check,
            parameters: Parameters { p: None, r: None, range: String::new() },
            checked: 0,
            skipped: 0,
            mismatches: Vec::new(),
            status: Status::Skipped,
            note: Some(reason.to_string()),
            generated_at: None,
        }
    }

    pub fn with_timestamp(mut self, secs: u64) -> Self {
        self.generated_at = Some(secs);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
