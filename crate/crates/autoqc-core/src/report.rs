//! Structured pass/fail reporting shared by the command-line tools.

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One named check with its observed value and the bound it was held to.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub observed: f64,
    pub bound: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, passed: bool, observed: f64, bound: f64) -> Self {
        Verdict { name: name.into(), passed, observed, bound, detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// Builds the verdict from a `value <= bound` comparison.
    pub fn at_most(name: &str, observed: f64, bound: f64) -> Self {
        Self::new(name, observed <= bound, observed, bound)
    }

    /// Builds the verdict from a `value >= bound` comparison.
    pub fn at_least(name: &str, observed: f64, bound: f64) -> Self {
        Self::new(name, observed >= bound, observed, bound)
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "[PASS]" } else { "[FAIL]" };
        let mut line = format!(
            "{tag} {}: observed {} against bound {}",
            self.name,
            format_float(self.observed),
            format_float(self.bound)
        );
        if !self.detail.is_empty() {
            line.push_str(&format!(" ({})", self.detail));
        }
        line
    }
}

/// Full output of one tool run: version, echoed configuration, verdicts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub verdicts: Vec<Verdict>,
}

impl RunReport {
    pub fn new(config: serde_json::Value) -> Self {
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            verdicts: Vec::new(),
        }
    }

    pub fn push(&mut self, verdict: Verdict) {
        self.verdicts.push(verdict);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Fixed-width scientific rendering used by every CSV and report column.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_lines_carry_the_tag_and_values() {
        let good = Verdict::at_most("walk variance", 0.5, 1.0);
        assert!(good.passed);
        assert!(good.line().starts_with("[PASS] walk variance"));
        let bad = Verdict::at_least("escape probability", 0.1, 0.5).with_detail("k = 4");
        assert!(!bad.passed);
        assert!(bad.line().starts_with("[FAIL] escape probability"));
        assert!(bad.line().ends_with("(k = 4)"));
    }

    #[test]
    fn reports_round_trip_through_json() {
        let mut report = RunReport::new(serde_json::json!({"n": 3}));
        report.push(Verdict::at_most("x", 1.0, 2.0));
        let text = report.to_json().unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.verdicts.len(), 1);
        assert!(back.passed());
        assert_eq!(back.config["n"], 3);
    }

    #[test]
    fn floats_render_with_full_precision() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
    }
}
