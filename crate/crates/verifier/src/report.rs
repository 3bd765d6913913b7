use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_VERSION: &str = concat!("steenrod-verifier ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "reason")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to these parameters; does not block a pass.
    Skipped(String),
    /// Not run because a limit was hit; blocks a pass.
    Incomplete(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub job: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub verdict: Verdict,
    pub summary: String,
    pub checks: Vec<CheckResult>,
    /// Computed quantities worth comparing against closed forms.
    pub values: BTreeMap<String, Value>,
    /// SHA-256 of each artifact the job produced.
    pub digests: BTreeMap<String, String>,
    pub version: String,
    pub timings_ms: BTreeMap<String, u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        write!(out, "{b:02x}").unwrap();
    }
    out
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn value(&self, key: &str) -> Option<&Value> {
        self.values.get(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The JSON form without timings, for byte comparisons.
    pub fn to_json_without_timings(&self) -> String {
        let mut r = self.clone();
        r.timings_ms.clear();
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(out, "job {} ({}) seed {}", self.job, params.join(", "), self.seed).unwrap();
        for c in &self.checks {
            let (tag, why) = match &c.status {
                Status::Pass => ("PASS", String::new()),
                Status::Fail => ("FAIL", String::new()),
                Status::Skipped(r) => ("SKIP", format!(" [{r}]")),
                Status::Incomplete(r) => ("INCOMPLETE", format!(" [{r}]")),
            };
            writeln!(out, "  {tag:<10} {}: {}{why}", c.name, c.detail).unwrap();
        }
        for (k, v) in &self.values {
            writeln!(out, "  value {k} = {v}").unwrap();
        }
        for (k, v) in &self.digests {
            writeln!(out, "  sha256 {k} {v}").unwrap();
        }
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Incomplete => "incomplete",
        };
        writeln!(out, "{verdict}: {}", self.summary).unwrap();
        out
    }
}

/// Collects checks while a job runs.
pub struct ReportBuilder {
    job: String,
    params: BTreeMap<String, Value>,
    seed: u64,
    checks: Vec<CheckResult>,
    values: BTreeMap<String, Value>,
    digests: BTreeMap<String, String>,
    timings_ms: BTreeMap<String, u64>,
    artifacts: Vec<(String, Vec<u8>)>,
}

impl ReportBuilder {
    pub fn new(job: &str, params: BTreeMap<String, Value>, seed: u64) -> Self {
        ReportBuilder {
            job: job.into(),
            params,
            seed,
            checks: Vec::new(),
            values: BTreeMap::new(),
            digests: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            status: Status::Skipped(reason.into()),
            detail: String::new(),
        });
    }

    pub fn incomplete(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            status: Status::Incomplete(reason.into()),
            detail: String::new(),
        });
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl Into<Value>) {
        self.values.insert(key.into(), v.into());
    }

    pub fn artifact(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        let name = name.into();
        self.digests.insert(name.clone(), sha256_hex(&bytes));
        self.artifacts.push((name, bytes));
    }

    pub fn timing(&mut self, name: impl Into<String>, ms: u64) {
        self.timings_ms.insert(name.into(), ms);
    }

    pub fn artifacts(&self) -> &[(String, Vec<u8>)] {
        &self.artifacts
    }

    pub fn finish(self, summary_pass: String) -> Report {
        let any_fail = self.checks.iter().any(|c| c.status == Status::Fail);
        let any_incomplete = self
            .checks
            .iter()
            .any(|c| matches!(c.status, Status::Incomplete(_)));
        let verdict = if any_fail {
            Verdict::Fail
        } else if any_incomplete {
            Verdict::Incomplete
        } else {
            Verdict::Pass
        };
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name.as_str())
            .collect();
        let summary = match verdict {
            Verdict::Pass => summary_pass,
            Verdict::Fail => format!("failed checks: {}", failed.join(", ")),
            Verdict::Incomplete => "some checks did not run within the configured limits".into(),
        };
        Report {
            job: self.job,
            params: self.params,
            seed: self.seed,
            verdict,
            summary,
            checks: self.checks,
            values: self.values,
            digests: self.digests,
            version: REPORT_VERSION.into(),
            timings_ms: self.timings_ms,
        }
    }
}
