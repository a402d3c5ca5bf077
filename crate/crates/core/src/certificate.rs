//! Verification reports: named residuals against tolerances, with a
//! verdict that passes exactly when every residual is within tolerance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub suite: String,
    pub target: String,
    /// Names of the identities this certificate checks.
    pub anchors: Vec<String>,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    /// Values reported without affecting the verdict.
    #[serde(default)]
    pub informational: BTreeMap<String, Value>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub verdict: Verdict,
    #[serde(default)]
    pub input_digest: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Certificate {
    pub fn new(suite: impl Into<String>) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            target: String::new(),
            anchors: Vec::new(),
            residuals: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            informational: BTreeMap::new(),
            notes: Vec::new(),
            verdict: Verdict::Pass,
            input_digest: String::new(),
            seed: 0,
            samples: 0,
            wall_time_ms: None,
        }
    }

    pub fn with_target(mut self, target: impl Into<String>) -> Self {
        self.target = target.into();
        self
    }

    pub fn anchor(&mut self, name: &str) {
        if !self.anchors.iter().any(|a| a == name) {
            self.anchors.push(name.to_string());
        }
    }

    /// Record `residual` under `label`, keeping the worst value if the label
    /// was already present.
    pub fn check(&mut self, label: &str, residual: f64, tol: f64) {
        let value = if residual.is_finite() {
            residual
        } else {
            self.notes.push(format!("residual '{label}' is not finite"));
            f64::MAX
        };
        let slot = self.residuals.entry(label.to_string()).or_insert(0.0);
        *slot = slot.max(value);
        self.tolerances.insert(label.to_string(), tol);
        if value > tol {
            self.verdict = Verdict::Fail;
        }
    }

    /// Record a boolean condition as a 0/1 residual with tolerance 0.
    pub fn require(&mut self, label: &str, ok: bool) {
        self.check(label, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub fn info(&mut self, label: &str, value: impl Into<Value>) {
        self.informational.insert(label.to_string(), value.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Fold another certificate in, prefixing its labels.
    pub fn absorb(&mut self, prefix: &str, other: &Certificate) {
        let key = |l: &str| {
            if prefix.is_empty() {
                l.to_string()
            } else {
                format!("{prefix}.{l}")
            }
        };
        for a in &other.anchors {
            self.anchor(a);
        }
        for (l, &r) in &other.residuals {
            let tol = other.tolerances.get(l).copied().unwrap_or(0.0);
            self.check(&key(l), r, tol);
        }
        for (l, v) in &other.informational {
            self.informational.insert(key(l), v.clone());
        }
        for n in &other.notes {
            self.notes.push(if prefix.is_empty() {
                n.clone()
            } else {
                format!("{prefix}: {n}")
            });
        }
        if other.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Labels whose residual exceeds the tolerance.
    pub fn failures(&self) -> Vec<String> {
        self.residuals
            .iter()
            .filter(|(l, &r)| r > self.tolerances.get(*l).copied().unwrap_or(0.0))
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn residual(&self, label: &str) -> Option<f64> {
        self.residuals.get(label).copied()
    }

    /// Recompute the verdict from the stored residuals.
    pub fn recompute_verdict(&mut self) {
        self.verdict = if self.failures().is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Lowercase hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_worst_residual() {
        let mut c = Certificate::new("demo");
        c.check("a", 1e-12, 1e-9);
        assert!(c.passed());
        c.check("a", 1e-3, 1e-9);
        assert!(!c.passed());
        assert_eq!(c.failures(), vec!["a".to_string()]);
        assert_eq!(c.residual("a"), Some(1e-3));
    }

    #[test]
    fn non_finite_residual_fails() {
        let mut c = Certificate::new("demo");
        c.check("nan", f64::NAN, 1.0);
        assert!(!c.passed());
        assert!(c.residual("nan").unwrap().is_finite());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let mut c = Certificate::new("demo").with_target("c2-group");
        c.check("x", 0.1 + 0.2, 1.0);
        c.check("tiny", 1.234_567_890_123_456_7e-17, 1e-9);
        c.info("dim", 4);
        let back: Certificate = serde_json::from_str(&c.to_json_pretty()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
