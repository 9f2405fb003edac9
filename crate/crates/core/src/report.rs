//! Structured verification reports.
//!
//! A report collects named findings. Residual findings always carry the
//! tolerance they were compared against. The verdict is `fail` iff an
//! asserted check failed, `flagged` when the only anomalies are documented
//! discrepancies, and `pass` otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::numerics::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Flagged,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Finding {
    /// A named predicate; asserted when `expected` is present.
    Boolean {
        name: String,
        value: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        expected: Option<bool>,
    },
    /// A residual compared against `tolerance`.
    Residual {
        name: String,
        value: f64,
        tolerance: f64,
        passed: bool,
    },
    /// A computed value with nothing asserted about it.
    Quantity {
        name: String,
        value: serde_json::Value,
    },
    /// A computed value that disagrees with a documented claim.
    Discrepancy {
        name: String,
        claimed: f64,
        computed: f64,
        note: String,
    },
    /// A condition raised while running a check (e.g. a singular multiplier).
    Outcome {
        name: String,
        message: String,
        asserted: bool,
    },
}

impl Finding {
    pub fn name(&self) -> &str {
        match self {
            Finding::Boolean { name, .. }
            | Finding::Residual { name, .. }
            | Finding::Quantity { name, .. }
            | Finding::Discrepancy { name, .. }
            | Finding::Outcome { name, .. } => name,
        }
    }

    pub fn failed(&self) -> bool {
        match self {
            Finding::Boolean { value, expected, .. } => expected.is_some_and(|e| e != *value),
            Finding::Residual { passed, .. } => !passed,
            Finding::Outcome { asserted, .. } => *asserted,
            Finding::Quantity { .. } | Finding::Discrepancy { .. } => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Input name to `sha256:<hex>` for files, or the literal parameter value.
    pub inputs: BTreeMap<String, String>,
    pub findings: Vec<Finding>,
    pub tolerances: ToleranceConfig,
    pub verdict: Verdict,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: impl Into<String>, tolerances: ToleranceConfig) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            findings: Vec::new(),
            tolerances,
            verdict: Verdict::Pass,
        }
    }

    pub fn file_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), digest(bytes));
    }

    pub fn param(&mut self, name: &str, value: impl ToString) {
        self.inputs.insert(name.to_string(), value.to_string());
    }

    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
        self.verdict = self.compute_verdict();
    }

    pub fn boolean(&mut self, name: &str, value: bool, expected: Option<bool>) {
        self.push(Finding::Boolean {
            name: name.to_string(),
            value,
            expected,
        });
    }

    /// Records `value <= tolerance` and returns whether it held.
    pub fn residual(&mut self, name: &str, value: f64, tolerance: f64) -> bool {
        let passed = value <= tolerance;
        self.push(Finding::Residual {
            name: name.to_string(),
            value,
            tolerance,
            passed,
        });
        passed
    }

    pub fn quantity(&mut self, name: &str, value: impl Serialize) {
        self.push(Finding::Quantity {
            name: name.to_string(),
            value: serde_json::to_value(value).expect("serializable quantity"),
        });
    }

    pub fn discrepancy(&mut self, name: &str, claimed: f64, computed: f64, note: &str) {
        self.push(Finding::Discrepancy {
            name: name.to_string(),
            claimed,
            computed,
            note: note.to_string(),
        });
    }

    pub fn outcome(&mut self, name: &str, message: impl Into<String>, asserted: bool) {
        self.push(Finding::Outcome {
            name: name.to_string(),
            message: message.into(),
            asserted,
        });
    }

    pub fn get(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name() == name)
    }

    fn compute_verdict(&self) -> Verdict {
        if self.findings.iter().any(Finding::failed) {
            Verdict::Fail
        } else if self.findings.iter().any(|f| matches!(f, Finding::Discrepancy { .. })) {
            Verdict::Flagged
        } else {
            Verdict::Pass
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.verdict.as_str().to_uppercase());
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  input {k} = {v}");
        }
        let _ = writeln!(
            out,
            "  tolerances: rel_eps = {:e}, cond_max = {:e}",
            self.tolerances.rel_eps, self.tolerances.cond_max
        );
        for f in &self.findings {
            let mark = if f.failed() { "FAIL" } else { "    " };
            let line = match f {
                Finding::Boolean { name, value, expected } => match expected {
                    Some(e) => format!("{name} = {value} (expected {e})"),
                    None => format!("{name} = {value}"),
                },
                Finding::Residual { name, value, tolerance, .. } => {
                    format!("{name} = {value:.3e} (tolerance {tolerance:.3e})")
                }
                Finding::Quantity { name, value } => format!("{name} = {value}"),
                Finding::Discrepancy { name, claimed, computed, note } => {
                    format!("{name}: claimed {claimed}, computed {computed} ({note})")
                }
                Finding::Outcome { name, message, .. } => format!("{name}: {message}"),
            };
            let _ = writeln!(out, "{mark} {line}");
        }
        out
    }
}

/// Several reports under one command, e.g. `examples run --all`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSet {
    pub command: String,
    pub reports: Vec<Report>,
    pub verdict: Verdict,
}

impl ReportSet {
    pub fn new(command: impl Into<String>, reports: Vec<Report>) -> Self {
        let verdict = if reports.iter().any(|r| r.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if reports.iter().any(|r| r.verdict == Verdict::Flagged) {
            Verdict::Flagged
        } else {
            Verdict::Pass
        };
        ReportSet {
            command: command.into(),
            reports,
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.verdict.as_str().to_uppercase());
        for r in &self.reports {
            out.push('\n');
            out.push_str(&r.render_text());
        }
        out
    }
}
