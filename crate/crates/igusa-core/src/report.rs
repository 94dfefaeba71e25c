//! Machine-readable suite reports: deterministic JSON with stable key
//! ordering; timing fields are excluded from equality.

use crate::Result;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

/// One verified claim: identifier, the claim it certifies, outcome, witness
/// data and wall time.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub paper_ref: String,
    pub status: CheckStatus,
    pub witness: serde_json::Value,
    pub ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub verdict: String,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<CheckRecord>) -> Self {
        let verdict = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
            "fail"
        } else {
            "pass"
        };
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            checks,
            verdict: verdict.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<SuiteReport> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Equality with the timing fields blanked out.
    pub fn equal_modulo_timing(&self, other: &SuiteReport) -> bool {
        if self.schema_version != other.schema_version
            || self.suite != other.suite
            || self.seed != other.seed
            || self.verdict != other.verdict
            || self.checks.len() != other.checks.len()
        {
            return false;
        }
        self.checks.iter().zip(&other.checks).all(|(a, b)| {
            a.id == b.id
                && a.paper_ref == b.paper_ref
                && a.status == b.status
                && a.witness == b.witness
        })
    }

    /// Merges sub-suite reports into a combined one.
    pub fn combine(suite: &str, seed: u64, parts: Vec<SuiteReport>) -> SuiteReport {
        let checks = parts.into_iter().flat_map(|r| r.checks).collect();
        SuiteReport::new(suite, seed, checks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        SuiteReport::new(
            "demo",
            7,
            vec![CheckRecord {
                id: "demo.count".into(),
                paper_ref: "a demonstration count".into(),
                status: CheckStatus::Pass,
                witness: serde_json::json!({"count": 15}),
                ms: 3,
            }],
        )
    }

    #[test]
    fn roundtrip_and_timing_equality() {
        let dir = std::env::temp_dir().join("igusa-report-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("report.json");
        let r = sample();
        r.write(&path).unwrap();
        let back = SuiteReport::read(&path).unwrap();
        assert!(r.equal_modulo_timing(&back));
        // timing differences are ignored
        let mut slower = r.clone();
        slower.checks[0].ms = 9999;
        assert!(r.equal_modulo_timing(&slower));
        // schema version is present in the serialized form
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("schema_version"));
    }

    #[test]
    fn verdict_reflects_failures() {
        let mut r = sample();
        assert!(r.passed());
        r.checks[0].status = CheckStatus::SkippedBudget;
        let r2 = SuiteReport::new("demo", 7, r.checks.clone());
        assert!(r2.passed(), "budget skips do not fail the suite");
        r.checks[0].status = CheckStatus::Fail;
        let r3 = SuiteReport::new("demo", 7, r.checks);
        assert!(!r3.passed());
    }
}
