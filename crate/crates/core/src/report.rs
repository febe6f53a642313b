//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::search::Status;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub status: Status,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    /// Input name to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<CheckResult>,
    /// Wall-clock milliseconds; absent in deterministic mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            inputs: BTreeMap::new(),
            results: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), digest(bytes));
    }

    pub fn push(&mut self, name: &str, claim: &str, status: Status, detail: impl Serialize) {
        self.results.push(CheckResult {
            name: name.to_string(),
            claim: claim.to_string(),
            status,
            detail: serde_json::to_value(detail).expect("report details serialize"),
        });
    }

    /// Any failure wins over inconclusive, which wins over pass.
    pub fn exit_code(&self) -> i32 {
        let has = |s: Status| self.results.iter().any(|r| r.status == s);
        if has(Status::Fail) {
            EXIT_FAIL
        } else if has(Status::Inconclusive) {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let status = serde_json::to_value(r.status).expect("status serializes");
            let _ = writeln!(s, "{}: {} ({})", r.name, status.as_str().unwrap_or("?"), r.claim);
            let _ = writeln!(s, "  {}", r.detail);
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time: {ms} ms");
        }
        s
    }
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(digest(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn exit_code_precedence() {
        let mut r = Report::new(vec![]);
        assert_eq!(r.exit_code(), EXIT_PASS);
        r.push("a", "", Status::Inconclusive, ());
        assert_eq!(r.exit_code(), EXIT_INCONCLUSIVE);
        r.push("b", "", Status::Fail, ());
        assert_eq!(r.exit_code(), EXIT_FAIL);
    }

    #[test]
    fn timing_is_omitted_when_absent() {
        let r = Report::new(vec!["x".into()]);
        assert!(!r.to_json().contains("timing"));
    }
}
