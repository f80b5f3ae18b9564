use std::time::Instant;

use serde::Serialize;

/// Outcome of an exhaustive identity check. `pass` holds exactly when
/// `counterexample` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub n: usize,
    /// Evaluation points, each a list of canonical rational strings.
    pub grid: Vec<Vec<String>>,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
    /// Wall time; the only field allowed to differ between identical runs.
    pub millis: u64,
}

/// The first disagreement found, in grid order then canonical window
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Which sub-check failed, e.g. `product` or `idempotent`.
    pub check: String,
    pub point: Vec<String>,
    pub perm: Vec<i32>,
    pub lhs: String,
    pub rhs: String,
}

impl VerificationReport {
    pub(crate) fn finish(
        identity: impl Into<String>,
        n: usize,
        grid: Vec<Vec<String>>,
        counterexample: Option<Counterexample>,
        started: Instant,
    ) -> Self {
        VerificationReport {
            identity: identity.into(),
            n,
            grid,
            pass: counterexample.is_none(),
            counterexample,
            millis: started.elapsed().as_millis() as u64,
        }
    }

    /// Zeroes the timing so the JSON is byte-stable.
    pub fn without_timing(mut self) -> Self {
        self.millis = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report JSON is always serializable")
    }
}

impl Counterexample {
    pub(crate) fn new(
        check: &str,
        point: Vec<String>,
        perm: Vec<i32>,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        Counterexample {
            check: check.into(),
            point,
            perm,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Canonical text of an integer grid coordinate.
pub(crate) fn int_point(vals: &[i64]) -> Vec<String> {
    vals.iter().map(|v| format!("{v}/1")).collect()
}
