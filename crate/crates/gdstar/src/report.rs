//! Named residual reports produced by every verification suite.

use serde::{Deserialize, Serialize};

use crate::matcore::{CMat, Tolerance};

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemStatus {
    Passed,
    Failed,
    /// Hypothesis or class gate did not hold; the check was not evaluated.
    Skipped,
    /// Residual recorded for transparency, never asserted.
    Info,
}

/// One equation residual with its verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub residual: f64,
    pub status: ItemStatus,
}

/// Named list of equation residuals; `overall` holds iff no asserted item failed.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { items: Vec::new() }
    }

    /// Compare two matrices under the residual policy and record the outcome.
    pub fn check_eq(&mut self, name: &str, lhs: &CMat, rhs: &CMat, tol: &Tolerance) -> bool {
        let (pass, residual) = lhs.approx_eq_to(rhs, tol);
        self.items.push(CheckItem {
            name: name.to_string(),
            residual,
            status: if pass { ItemStatus::Passed } else { ItemStatus::Failed },
        });
        pass
    }

    /// Record a check whose residual was computed by the caller.
    pub fn check_residual(&mut self, name: &str, residual: f64, pass: bool) -> bool {
        self.items.push(CheckItem {
            name: name.to_string(),
            residual,
            status: if pass { ItemStatus::Passed } else { ItemStatus::Failed },
        });
        pass
    }

    /// Record a residual without asserting it.
    pub fn info(&mut self, name: &str, residual: f64) {
        self.items.push(CheckItem {
            name: name.to_string(),
            residual,
            status: ItemStatus::Info,
        });
    }

    /// Mark a gated check that was not evaluated.
    pub fn skip(&mut self, name: &str) {
        self.items.push(CheckItem {
            name: name.to_string(),
            residual: 0.0,
            status: ItemStatus::Skipped,
        });
    }

    /// Append another report's items under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut item in other.items {
            item.name = format!("{prefix}/{}", item.name);
            self.items.push(item);
        }
    }

    pub fn overall(&self) -> bool {
        self.items.iter().all(|i| i.status != ItemStatus::Failed)
    }

    pub fn count(&self, status: ItemStatus) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == ItemStatus::Failed)
    }

    pub fn max_residual(&self) -> f64 {
        self.items
            .iter()
            .filter(|i| i.status != ItemStatus::Skipped)
            .map(|i| i.residual)
            .fold(0.0, f64::max)
    }
}
