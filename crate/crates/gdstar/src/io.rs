//! Matrix file format and run reports: JSON with explicit [re, im] pairs for
//! bit-exact round trips, and a versioned report schema for the fuzz harness.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::matcore::{CMat, Tolerance, C64};
use crate::report::{CheckItem, CheckReport, ItemStatus};

/// On-disk matrix: row-major nested arrays of [re, im] doubles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_cmat(m: &CMat) -> MatrixFile {
        let data = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| {
                        let z = m.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixFile {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn to_cmat(&self) -> crate::Result<CMat> {
        if self.data.len() != self.rows || self.data.iter().any(|r| r.len() != self.cols) {
            return Err(crate::Error::ShapeMismatch {
                expected: (self.rows, self.cols),
                got: (self.data.len(), self.data.first().map_or(0, |r| r.len())),
            });
        }
        let flat: Vec<C64> = self
            .data
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        CMat::from_row_major(self.rows, self.cols, flat)
    }
}

/// I/O layer failures, kept separate from the numerical domain errors.
#[derive(Debug)]
pub enum IoError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Domain(crate::Error),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "io error: {e}"),
            IoError::Json(e) => write!(f, "malformed JSON: {e}"),
            IoError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IoError {}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e)
    }
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e)
    }
}

impl From<crate::Error> for IoError {
    fn from(e: crate::Error) -> Self {
        IoError::Domain(e)
    }
}

pub fn read_matrix(path: &Path) -> Result<CMat, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixFile = serde_json::from_str(&text)?;
    Ok(file.to_cmat()?)
}

pub fn write_matrix(path: &Path, m: &CMat) -> Result<(), IoError> {
    let file = MatrixFile::from_cmat(m);
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Inputs that produced a failing check, serialized with the seed so the
/// case replays exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: String,
    pub iteration: usize,
    pub seed: u64,
    pub failed_items: Vec<CheckItem>,
    pub inputs: BTreeMap<String, MatrixFile>,
}

/// Per-suite aggregate of a fuzz run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub iterations: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub info: usize,
    pub max_residual: f64,
}

/// Top-level harness report; `verdict` is "pass" iff no asserted item failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub suites: Vec<SuiteReport>,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: String,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

pub(crate) fn tally(reports: &[CheckReport]) -> (usize, usize, usize, usize, f64) {
    let mut passed = 0;
    let mut failed = 0;
    let mut skipped = 0;
    let mut info = 0;
    let mut max_res: f64 = 0.0;
    for rep in reports {
        passed += rep.count(ItemStatus::Passed);
        failed += rep.count(ItemStatus::Failed);
        skipped += rep.count(ItemStatus::Skipped);
        info += rep.count(ItemStatus::Info);
        for item in &rep.items {
            if item.status == ItemStatus::Passed || item.status == ItemStatus::Failed {
                max_res = max_res.max(item.residual);
            }
        }
    }
    (passed, failed, skipped, info, max_res)
}
