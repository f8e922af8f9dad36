//! Structured pass/fail records produced by every law checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One executed check. Failing checks always carry a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Identifies the checked instance, e.g. `vcat[C].assoc(0,1,1,2)`.
    pub id: String,
    /// Name of the law being checked, e.g. `vcategory.associativity`.
    pub law: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

/// Per-law pass/fail counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LawSummary {
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, id: impl Into<String>, law: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            law: law.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, id: impl Into<String>, law: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            law: law.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    /// Records `Ok(())` as a pass and `Err(witness)` as a failure.
    pub fn record(&mut self, id: impl Into<String>, law: impl Into<String>, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(id, law),
            Err(w) => self.fail(id, law, w),
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every check id prefixed by `scope`.
    pub fn extend_scoped(&mut self, scope: &str, other: VerificationReport) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.id = format!("{scope}/{}", c.id);
            c
        }));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed_count(&self) -> usize {
        self.checks.len() - self.passed_count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// True when some check of the given law failed.
    pub fn law_failed(&self, law: &str) -> bool {
        self.failures().any(|c| c.law == law)
    }

    pub fn by_law(&self) -> BTreeMap<String, LawSummary> {
        let mut out: BTreeMap<String, LawSummary> = BTreeMap::new();
        for c in &self.checks {
            let s = out.entry(c.law.clone()).or_default();
            if c.passed {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        out
    }

    /// One JSON object per line, in check order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("check serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let checks = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<Vec<Check>, _>>()?;
        Ok(Self { checks })
    }
}

impl fmt::Display for VerificationReport {
    /// Per-law summary followed by every failure with its witness.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (law, s) in self.by_law() {
            let status = if s.failed == 0 { "pass" } else { "FAIL" };
            writeln!(f, "{status} {law}: {} passed, {} failed", s.passed, s.failed)?;
        }
        for c in self.failures() {
            writeln!(
                f,
                "  failure {} [{}]: {}",
                c.id,
                c.law,
                c.witness.as_deref().unwrap_or("")
            )?;
        }
        write!(
            f,
            "summary: {} checks, {} passed, {} failed",
            self.checks.len(),
            self.passed_count(),
            self.failed_count()
        )
    }
}
