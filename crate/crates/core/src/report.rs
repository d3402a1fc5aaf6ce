//! Named residuals collected by the verification routines.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub value: f64,
    /// `None` marks an informational entry; those always pass.
    pub tolerance: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry that passes iff `value <= tol` (NaN fails).
    pub fn push(&mut self, name: impl Into<String>, value: f64, tol: f64) -> &mut Self {
        self.entries.push(CheckEntry {
            name: name.into(),
            value,
            tolerance: Some(tol),
            pass: value <= tol,
        });
        self
    }

    /// Adds an entry whose pass flag is decided by the caller.
    pub fn push_flag(
        &mut self,
        name: impl Into<String>,
        value: f64,
        tol: Option<f64>,
        pass: bool,
    ) -> &mut Self {
        self.entries.push(CheckEntry {
            name: name.into(),
            value,
            tolerance: tol,
            pass,
        });
        self
    }

    pub fn push_info(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.push_flag(name, value, None, true)
    }

    pub fn extend(&mut self, other: CheckReport) -> &mut Self {
        self.entries.extend(other.entries);
        self
    }

    /// Conjunction of every entry's pass flag.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.get(name).map(|e| e.value)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}
