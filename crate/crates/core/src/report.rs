use serde::Serialize;

use crate::bd::BdTriple;

/// Outcome of one named check; a check passes when it has no violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub violations: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.violations.push(witness.into());
    }

    /// Records `witness` unless `ok`.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(witness());
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub triple: BdTriple,
    pub checks: Vec<CheckOutcome>,
}

impl TripleReport {
    pub fn new(triple: BdTriple) -> Self {
        Self {
            triple,
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
