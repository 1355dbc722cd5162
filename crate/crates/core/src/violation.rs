//! Structured reports of condition violations.

use std::fmt;

use serde::Serialize;

/// One failed (or vacuous) clause together with the actions that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Clause identifier such as `"3.i"` or `"2.disjoint"`.
    pub condition: String,
    pub witnesses: Vec<String>,
    /// 1-based boundary indices involved.
    pub boundaries: Vec<usize>,
    pub message: String,
}

/// Hard violations plus advisory warnings. Only violations make a report non-empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn push(
        &mut self,
        condition: impl Into<String>,
        witnesses: Vec<String>,
        boundaries: Vec<usize>,
        message: impl Into<String>,
    ) {
        self.violations.push(Violation {
            condition: condition.into(),
            witnesses,
            boundaries,
            message: message.into(),
        });
    }

    pub fn warn(&mut self, condition: impl Into<String>, boundaries: Vec<usize>, message: impl Into<String>) {
        self.warnings.push(Violation {
            condition: condition.into(),
            witnesses: Vec::new(),
            boundaries,
            message: message.into(),
        });
    }

    pub fn merge(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }

    /// Violations whose clause identifier is exactly `condition`.
    pub fn of<'a>(&'a self, condition: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.condition == condition)
    }

    pub fn has(&self, condition: &str) -> bool {
        self.of(condition).next().is_some()
    }

    /// Keeps only the violations (and warnings) matching `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&Violation) -> bool) {
        self.violations.retain(&mut keep);
        self.warnings.retain(&mut keep);
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.condition)?;
        if !self.boundaries.is_empty() {
            let ks: Vec<String> = self.boundaries.iter().map(|k| format!("B{k}")).collect();
            write!(f, " {}", ks.join(","))?;
        }
        if !self.witnesses.is_empty() {
            write!(f, " ({})", self.witnesses.join(", "))?;
        }
        write!(f, ": {}", self.message)
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "no violations")?;
        }
        for v in &self.violations {
            writeln!(f, "violation {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning {w}")?;
        }
        Ok(())
    }
}
