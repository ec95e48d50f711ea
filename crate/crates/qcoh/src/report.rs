//! Verification reports and their three output formats.

use std::fmt::Write as _;

use qcoh_core::errata::Erratum;
use qcoh_core::{Check, Status};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub anchor: String,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.clone(),
            status: c.status.as_str(),
            witness: c.witness.clone(),
            anchor: c.anchor.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErratumRecord {
    pub id: String,
    pub topic: String,
    pub printed: String,
    pub computed: String,
    pub resolved: bool,
}

impl From<&Erratum> for ErratumRecord {
    fn from(e: &Erratum) -> Self {
        ErratumRecord {
            id: e.id.to_string(),
            topic: e.topic.to_string(),
            printed: e.printed.clone(),
            computed: e.computed.clone(),
            resolved: e.resolved,
        }
    }
}

/// Resolution data for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionRecord {
    pub n: usize,
    pub alpha_exact: Option<String>,
    pub alpha_at_q: Option<String>,
    pub matrix_is_scalar: bool,
    pub chart_agreement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub seed: u64,
    pub q0: String,
    /// Zero unless timing was requested, so that reports stay reproducible.
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<ResolutionRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub errata: Option<Vec<ErratumRecord>>,
}

impl Report {
    /// Sorts checks by name.
    pub fn new(suite: &str, checks: &[Check], seed: u64, q0: String) -> Self {
        let mut checks: Vec<CheckRecord> = checks.iter().map(CheckRecord::from).collect();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            checks,
            seed,
            q0,
            runtime_ms: 0,
            resolution: None,
            errata: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("name\tstatus\twitness\tanchor\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                tsv_field(&c.name),
                c.status,
                tsv_field(c.witness.as_deref().unwrap_or("")),
                tsv_field(&c.anchor)
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {}, q = {})", self.suite, self.seed, self.q0);
        for c in &self.checks {
            let _ = write!(out, "  {:<4} {}", c.status, c.name);
            if let Some(w) = &c.witness {
                let _ = write!(out, ": {w}");
            }
            out.push('\n');
        }
        if let Some(rs) = &self.resolution {
            for r in rs {
                let _ = writeln!(
                    out,
                    "  n = {}: alpha = {}, alpha(q) = {}, scalar = {}, charts agree = {}",
                    r.n,
                    r.alpha_exact.as_deref().unwrap_or("-"),
                    r.alpha_at_q.as_deref().unwrap_or("-"),
                    r.matrix_is_scalar,
                    r.chart_agreement
                );
            }
        }
        if let Some(es) = &self.errata {
            for e in es {
                let _ = writeln!(out, "  erratum {} ({})", e.id, e.topic);
                let _ = writeln!(out, "    printed:  {}", e.printed);
                let _ = writeln!(out, "    computed: {}", e.computed);
            }
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failed", total, failed);
        if self.runtime_ms > 0 {
            let _ = writeln!(out, "{} ms", self.runtime_ms);
        }
        out
    }
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_serialized() {
        let checks = [
            Check::pass("b", "anchor b"),
            Check::fail("a", "anchor a", "x != y"),
        ];
        let r = Report::new("demo", &checks, 7, "1/2".into());
        assert_eq!(r.checks[0].name, "a");
        assert!(!r.passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["checks"][0]["witness"], "x != y");
        assert!(v["checks"][1].get("witness").is_none());
        assert_eq!(v["runtime_ms"], 0);
        assert!(v.get("errata").is_none());
    }

    #[test]
    fn tsv_has_one_row_per_check() {
        let r = Report::new("demo", &[Check::pass("a", "x\ty")], 0, "1/2".into());
        let tsv = r.to_tsv();
        assert_eq!(tsv.lines().count(), 2);
        assert!(tsv.lines().nth(1).unwrap().ends_with("x y"));
    }
}
