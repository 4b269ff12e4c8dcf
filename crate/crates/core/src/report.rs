//! Machine-readable certificates: one entry per checked statement.

use std::fmt;

use serde::Serialize;

use crate::complex::Mismatch;
use crate::morph::{LedgerSummary, UsageLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// The first differing cell, when an identity fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<Mismatch>,
    /// Set when the statement could not be evaluated at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub subject: String,
    pub n: usize,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ledger: Option<LedgerSummary>,
}

impl Certificate {
    pub fn new(subject: impl Into<String>, n: usize) -> Certificate {
        Certificate { subject: subject.into(), n, checks: Vec::new(), ledger: None }
    }

    /// Records the outcome of an identity check: `Ok(None)` passes.
    pub fn record<E: fmt::Display>(&mut self, id: impl Into<String>, outcome: Result<Option<Mismatch>, E>) -> bool {
        let (status, sides, error) = match outcome {
            Ok(None) => (Status::Pass, None, None),
            Ok(Some(m)) => (Status::Fail, Some(m), None),
            Err(e) => (Status::Fail, None, Some(e.to_string())),
        };
        self.checks.push(Check { id: id.into(), status, sides, error });
        status == Status::Pass
    }

    /// Records a yes/no statement.
    pub fn assert(&mut self, id: impl Into<String>, ok: bool, why: impl FnOnce() -> String) -> bool {
        let error = if ok { None } else { Some(why()) };
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { id: id.into(), status, sides: None, error });
        ok
    }

    pub fn absorb(&mut self, other: Certificate) {
        let prefix = other.subject;
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.id = format!("{prefix}/{}", c.id);
            c
        }));
    }

    pub fn set_ledger(&mut self, ledger: &UsageLedger) {
        self.ledger = Some(ledger.summary());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn count(&self, prefix: &str) -> usize {
        self.checks.iter().filter(|c| c.id.starts_with(prefix)).count()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        write!(f, "{} (n = {}): {passed}/{} checks pass", self.subject, self.n, self.checks.len())?;
        if let Some(c) = self.first_failure() {
            write!(f, "; first failure {}", c.id)?;
            if let Some(m) = &c.sides {
                write!(f, " at ({}, {}): {} != {}", m.row, m.col, m.lhs, m.rhs)?;
            }
            if let Some(e) = &c.error {
                write!(f, ": {e}")?;
            }
        }
        Ok(())
    }
}
