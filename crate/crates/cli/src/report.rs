//! Pass/fail reports shared by `verify` and the acceptance test.

use std::time::Instant;

use serde::Serialize;

use skdv_core::CoreError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// One compared value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub item: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub target: String,
    /// The statement being checked, in plain words.
    pub claim: String,
    pub status: Status,
    pub seed: u64,
    pub version: String,
    pub elapsed_ms: u128,
    pub comparisons: Vec<Comparison>,
    pub notes: Vec<String>,
}

impl CheckReport {
    /// Failed comparisons only.
    pub fn failures(&self) -> Vec<&Comparison> {
        self.comparisons.iter().filter(|c| !c.ok).collect()
    }

    pub fn summary_line(&self) -> String {
        let n = self.comparisons.len();
        let bad = self.failures().len();
        format!(
            "{:<13} {:<22} {}/{} comparisons ok, {:.1} s",
            self.status.label(),
            self.target,
            n - bad,
            n,
            self.elapsed_ms as f64 / 1000.0
        )
    }

    pub fn text(&self) -> String {
        let mut s = format!("{}\n  claim: {}\n", self.summary_line(), self.claim);
        for c in &self.comparisons {
            let mark = if c.ok { "ok  " } else { "DIFF" };
            if c.expected == c.got {
                s.push_str(&format!("  {mark} {}: {}\n", c.item, c.got));
            } else {
                s.push_str(&format!("  {mark} {}: expected {}, got {}\n", c.item, c.expected, c.got));
            }
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

/// Collects comparisons while a check runs.
pub struct Recorder {
    target: String,
    claim: String,
    seed: u64,
    start: Instant,
    comparisons: Vec<Comparison>,
    notes: Vec<String>,
}

impl Recorder {
    pub fn new(target: &str, claim: &str, seed: u64) -> Self {
        Recorder {
            target: target.into(),
            claim: claim.into(),
            seed,
            start: Instant::now(),
            comparisons: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn compare(&mut self, item: impl Into<String>, expected: impl ToString, got: impl ToString) -> bool {
        let (expected, got) = (expected.to_string(), got.to_string());
        let ok = expected == got;
        self.comparisons.push(Comparison { item: item.into(), expected, got, ok });
        ok
    }

    /// A comparison whose success is decided by the caller.
    pub fn judge(&mut self, item: impl Into<String>, expected: impl ToString, got: impl ToString, ok: bool) -> bool {
        self.comparisons.push(Comparison { item: item.into(), expected: expected.to_string(), got: got.to_string(), ok });
        ok
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    fn build(self, status: Status) -> CheckReport {
        CheckReport {
            target: self.target,
            claim: self.claim,
            status,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").into(),
            elapsed_ms: self.start.elapsed().as_millis(),
            comparisons: self.comparisons,
            notes: self.notes,
        }
    }

    pub fn finish(self) -> CheckReport {
        let status = if self.comparisons.iter().all(|c| c.ok) && !self.comparisons.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        self.build(status)
    }

    /// Closes the report after an error. Sampling and precision failures are
    /// inconclusive; anything else is a failure.
    pub fn error(mut self, e: &CoreError) -> CheckReport {
        self.note(format!("error: {e}"));
        let status = match e {
            CoreError::Inconclusive { .. } | CoreError::Precision | CoreError::DegenerateGerm(_) => Status::Inconclusive,
            _ => Status::Fail,
        };
        self.build(status)
    }
}

/// Overall status of several reports: any failure fails, otherwise any
/// inconclusive report makes the whole inconclusive.
pub fn overall(reports: &[CheckReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}
