use std::fmt::Write as _;

use serde::Serialize;
use ulat_core::convergence::{Status, Verdict};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl SuiteStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => "fail",
            SuiteStatus::Inconclusive => "inconclusive",
        }
    }
}

/// A counterexample the suite is supposed to find.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedFailure {
    pub subject: String,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub inconclusive: u64,
    pub expected_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub anchor: String,
    pub status: SuiteStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expected_failures: Vec<ExpectedFailure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Accumulates case outcomes for one suite.
#[derive(Debug, Default)]
pub struct SuiteRun {
    counts: Counts,
    witness: Option<String>,
    expected: Vec<ExpectedFailure>,
    notes: Vec<String>,
}

impl SuiteRun {
    pub fn new() -> Self {
        SuiteRun::default()
    }

    pub fn counts(&self) -> &Counts {
        &self.counts
    }

    pub fn pass(&mut self) {
        self.counts.cases += 1;
        self.counts.passed += 1;
    }

    /// Records a failed case; the first witness is kept.
    pub fn fail(&mut self, subject: &str, witness: impl Into<String>) {
        self.counts.cases += 1;
        self.counts.failed += 1;
        if self.witness.is_none() {
            self.witness = Some(format!("{subject}: {}", witness.into()));
        }
    }

    pub fn inconclusive(&mut self, subject: &str, why: impl Into<String>) {
        self.counts.cases += 1;
        self.counts.inconclusive += 1;
        self.notes.push(format!("{subject}: {}", why.into()));
    }

    pub fn check(&mut self, ok: bool, subject: &str, witness: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(subject, witness());
        }
    }

    pub fn expected_failure(&mut self, subject: impl Into<String>, witness: impl Into<String>) {
        self.counts.cases += 1;
        self.counts.expected_failures += 1;
        self.expected.push(ExpectedFailure { subject: subject.into(), witness: witness.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// A verdict that should accept (exact or verified at the horizon).
    pub fn holds(&mut self, subject: &str, v: &Verdict) {
        self.verdict(subject, v, false, false);
    }

    /// A verdict that should be exact.
    pub fn exact(&mut self, subject: &str, v: &Verdict) {
        self.verdict(subject, v, false, true);
    }

    /// A verdict that should be falsified; the refutation is an expected failure.
    pub fn refuted(&mut self, subject: &str, v: &Verdict) {
        self.verdict(subject, v, true, false);
    }

    fn verdict(&mut self, subject: &str, v: &Verdict, want_false: bool, want_exact: bool) {
        match (v.status, want_false) {
            (Status::Falsified, true) => {
                let w = v.witness.as_ref().map_or_else(|| v.note.clone(), |w| w.detail.clone());
                self.expected_failure(subject, w);
            }
            (Status::Falsified, false) => self.fail(subject, describe(v)),
            (Status::Inconclusive, _) => self.inconclusive(subject, describe(v)),
            (_, true) => self.fail(subject, format!("expected a refutation, got {}", describe(v))),
            (Status::VerifiedAtHorizon, false) if want_exact => {
                self.fail(subject, format!("expected an exact verdict, got {}", describe(v)))
            }
            _ => self.pass(),
        }
    }

    pub fn finish(self, suite: &str, anchor: &str) -> SuiteRecord {
        let status = if self.counts.failed > 0 {
            SuiteStatus::Fail
        } else if self.counts.inconclusive > 0 || self.counts.cases == 0 {
            SuiteStatus::Inconclusive
        } else {
            SuiteStatus::Pass
        };
        SuiteRecord {
            suite: suite.to_string(),
            anchor: anchor.to_string(),
            status,
            witness: self.witness,
            counts: self.counts,
            expected_failures: self.expected,
            notes: self.notes,
            elapsed_ms: None,
        }
    }
}

pub fn describe(v: &Verdict) -> String {
    let mut s = format!("{} ({:?})", v.status, v.basis).to_lowercase();
    if let Some(w) = &v.witness {
        if w.indices.is_empty() {
            let _ = write!(s, ": {}", w.detail);
        } else {
            let _ = write!(s, " at {:?}: {}", w.indices, w.detail);
        }
    }
    if !v.note.is_empty() {
        let _ = write!(s, " [{}]", v.note);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: u32,
    pub suites: Vec<SuiteRecord>,
}

impl Report {
    /// Records are ordered by suite name regardless of completion order.
    pub fn new(mut suites: Vec<SuiteRecord>) -> Self {
        suites.sort_by(|a, b| a.suite.cmp(&b.suite));
        Report { version: REPORT_VERSION, suites }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| suite | anchor | status | cases | expected failures | witness |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for r in &self.suites {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                r.suite,
                r.anchor,
                r.status.as_str(),
                r.counts.cases,
                r.counts.expected_failures,
                r.witness.as_deref().map(escape).unwrap_or_default()
            );
        }
        let expected: Vec<_> =
            self.suites.iter().flat_map(|r| r.expected_failures.iter().map(move |e| (r, e))).collect();
        if !expected.is_empty() {
            out.push_str("\n### Expected failures\n\n");
            for (r, e) in expected {
                let _ = writeln!(out, "- `{}` {}: {}", r.suite, e.subject, e.witness);
            }
        }
        let notes: Vec<_> = self.suites.iter().flat_map(|r| r.notes.iter().map(move |n| (r, n))).collect();
        if !notes.is_empty() {
            out.push_str("\n### Notes\n\n");
            for (r, n) in notes {
                let _ = writeln!(out, "- `{}` {n}", r.suite);
            }
        }
        out
    }

    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|r| r.status == SuiteStatus::Pass)
    }

    /// 0 when every suite passed, 1 otherwise (inconclusive counts as not passed).
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ulat_core::convergence::{Basis, Witness};

    #[test]
    fn empty_report() {
        let r = Report::new(Vec::new());
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"version":1,"suites":[]}"#);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn statuses_and_witnesses() {
        let mut run = SuiteRun::new();
        run.pass();
        run.refuted("n5", &Verdict::falsified(Basis::Exhaustive, Witness::note("x ∧ (y ∨ z)")));
        let rec = run.finish("b", "anchor b");
        assert_eq!(rec.status, SuiteStatus::Pass);
        assert_eq!(rec.counts.expected_failures, 1);

        let mut run = SuiteRun::new();
        run.fail("case 3", "lhs ≠ rhs");
        run.fail("case 4", "other");
        let failed = run.finish("a", "anchor a");
        assert_eq!(failed.status, SuiteStatus::Fail);
        assert_eq!(failed.witness.as_deref(), Some("case 3: lhs ≠ rhs"));

        let mut run = SuiteRun::new();
        run.holds("x", &Verdict::inconclusive("no bound"));
        assert_eq!(run.finish("c", "").status, SuiteStatus::Inconclusive);
        let mut run = SuiteRun::new();
        run.exact("x", &Verdict::at_horizon(10));
        assert_eq!(run.finish("d", "").status, SuiteStatus::Fail);
        assert_eq!(SuiteRun::new().finish("e", "").status, SuiteStatus::Inconclusive);

        let report = Report::new(vec![rec.clone(), failed.clone()]);
        assert_eq!(report.suites[0].suite, "a");
        assert_eq!(report.exit_code(), 1);
        let json = report.to_json();
        assert!(json.contains("\"witness\": \"case 3: lhs ≠ rhs\""));
        assert!(json.find("\"suite\"").unwrap() < json.find("\"anchor\"").unwrap());
        let md = report.to_markdown();
        assert!(md.contains("| b | anchor b | pass | 2 | 1 |  |"));
        assert!(md.contains("### Expected failures"));
    }
}
