use serde::{Deserialize, Serialize};

/// Which check produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Fast,
    Full,
    Labeling,
    Certificate,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    #[serde(default)]
    pub cells: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: &str, detail: impl Into<String>) -> Self {
        Violation {
            kind: kind.to_string(),
            cells: Vec::new(),
            vertices: Vec::new(),
            detail: detail.into(),
        }
    }

    pub fn with_cells(mut self, cells: impl IntoIterator<Item = usize>) -> Self {
        self.cells = cells.into_iter().collect();
        self
    }

    pub fn with_vertices(mut self, vertices: impl IntoIterator<Item = usize>) -> Self {
        self.vertices = vertices.into_iter().collect();
        self
    }
}

/// Outcome of a validation pass. `passed` holds iff `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub mode: CheckMode,
    pub passed: bool,
    /// Number of items examined (cells, vertices, grid points, ...).
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Sorts violations so reports do not depend on evaluation order.
    pub fn new(mode: CheckMode, checked: usize, mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        ValidationReport {
            mode,
            passed: violations.is_empty(),
            checked,
            violations,
        }
    }

    pub fn has_kind(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}
