//! Report records and their two canonical renderings — a human-readable text
//! table and a structured JSON document.  Both are deterministic: cases are
//! sorted by id, scalars are rendered in their canonical expanded form in
//! `u`, and no timing or environment data is embedded, so identical inputs
//! produce byte-identical reports regardless of the worker count.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Version stamp for every serialized artifact (reports and cache files).
pub const FORMAT_VERSION: u32 = 1;

/// Outcome of a single verification case.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseRecord {
    /// Stable identifier, e.g. `norm/B2/kl2-ks1/w[1,0]`.
    pub id: String,
    /// Monomial scale of the case's root system: `q = u^D`.
    pub q_denominator: i64,
    /// Left-hand side in canonical `u`-rendering, when the case compares two
    /// scalars.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    /// Right-hand side in canonical `u`-rendering.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    pub pass: bool,
    /// Extra detail, e.g. instance counts for aggregated relation checks or
    /// the measured monomial factor of a constant-term comparison.
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

impl CaseRecord {
    /// A scalar comparison: passes exactly when both renderings agree.
    pub fn compare(id: String, q_den: i64, lhs: String, rhs: String) -> Self {
        let pass = lhs == rhs;
        CaseRecord {
            id,
            q_denominator: q_den,
            lhs: Some(lhs),
            rhs: Some(rhs),
            pass,
            note: String::new(),
        }
    }

    /// An aggregated check: `pass` summarizes `checked` instances.
    pub fn bulk(id: String, q_den: i64, pass: bool, checked: usize) -> Self {
        CaseRecord {
            id,
            q_denominator: q_den,
            lhs: None,
            rhs: None,
            pass,
            note: format!("{checked} instances"),
        }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = note;
        self
    }
}

/// A full verification report: all cases of one suite invocation.
#[derive(Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: &str, mut cases: Vec<CaseRecord>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        Report {
            format_version: FORMAT_VERSION,
            suite: suite.to_string(),
            cases,
            passed,
            failed,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Process exit status: `0` exactly when every case passed.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# suite: {}", self.suite).unwrap();
        writeln!(out, "# format_version: {}", FORMAT_VERSION).unwrap();
        writeln!(out, "# scalars are rendered in u, with q = u^D as listed per case").unwrap();
        for c in &self.cases {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            write!(out, "{verdict} {} [D={}]", c.id, c.q_denominator).unwrap();
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                let op = if c.pass { "==" } else { "!=" };
                write!(out, " {l} {op} {r}").unwrap();
            }
            if !c.note.is_empty() {
                write!(out, " ({})", c.note).unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "# {} passed, {} failed", self.passed, self.failed).unwrap();
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Json,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_sort_cases_and_count_verdicts() {
        let cases = vec![
            CaseRecord::compare("b/two".into(), 4, "1".into(), "2".into()),
            CaseRecord::bulk("a/one".into(), 4, true, 7),
        ];
        let r = Report::new("demo", cases);
        assert_eq!(r.cases[0].id, "a/one");
        assert_eq!((r.passed, r.failed), (1, 1));
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().starts_with("# suite: demo\n"));
        let parsed: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed.cases.len(), 2);
    }
}
