//! Outcome records shared by the verification routines.

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Ordered list of named identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.checks.push(Check { id: id.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { id: id.into(), passed: false, witness: Some(witness.into()) });
    }

    /// Records `id` as passed when `witness` is `None`.
    pub fn record(&mut self, id: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(id),
            Some(w) => self.fail(id, w),
        }
    }

    /// Records the outcome of a fallible check; errors become failures.
    pub fn record_result(&mut self, id: impl Into<String>, r: Result<(), Error>) {
        match r {
            Ok(()) => self.pass(id),
            Err(e) => self.fail(id, e.to_string()),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Converts the first failure into a `VerificationFailure` error.
    pub fn into_result(self) -> Result<Report, Error> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(self),
            Some(c) => Err(Error::VerificationFailure {
                check: c.id.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            }),
        }
    }
}
