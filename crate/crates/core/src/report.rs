//! Serializable verification reports shared by the library checks and the CLI.

use serde::Serialize;

/// Version of every JSON document emitted by the library.
pub const SCHEMA_VERSION: u32 = 1;

/// A failing instance: basis indices (with labels) and the two sides that disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    /// Set when the entry was not evaluated (for instance an antipode check on a capped algebra).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
}

impl CheckEntry {
    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> Self {
        CheckEntry { name: name.into(), pass: witness.is_none(), skipped: None, counterexample: witness }
    }

    pub fn passed(name: impl Into<String>) -> Self {
        Self::from_witness(name, None)
    }

    pub fn failed(name: impl Into<String>, witness: Witness) -> Self {
        Self::from_witness(name, Some(witness))
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckEntry { name: name.into(), pass: true, skipped: Some(reason.into()), counterexample: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub check: String,
    pub instance: String,
    pub verdict: bool,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(check: impl Into<String>, instance: impl Into<String>, entries: Vec<CheckEntry>) -> Self {
        let verdict = entries.iter().all(|e| e.pass);
        Report { schema_version: SCHEMA_VERSION, check: check.into(), instance: instance.into(), verdict, entries }
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// The first failing entry, if any.
    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| !e.pass)
    }
}
