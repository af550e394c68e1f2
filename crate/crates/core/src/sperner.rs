//! Search for completely labeled cells.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Cell;
use crate::labeling::{require_valid_labeling, Labeling};
use crate::subdivision::Subdivision;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CLReport {
    pub count: usize,
    pub cells: Vec<Cell>,
}

/// True iff the cell's labels are exactly `{1, ..., n}`.
pub fn is_completely_labeled(labeling: &Labeling, cell: &Cell) -> bool {
    let n = cell.len();
    let mut seen = vec![false; n + 1];
    for &v in cell.vertices() {
        match labeling.get(v) {
            Some(l) if (1..=n).contains(&l) && !seen[l] => seen[l] = true,
            _ => return false,
        }
    }
    true
}

/// Linear scan over all cells. On valid input at least one cell is completely
/// labeled; an empty result is reported as an invariant violation.
pub fn find_completely_labeled(sub: &Subdivision, labeling: &Labeling) -> Result<CLReport> {
    sub.require_valid()?;
    require_valid_labeling(sub, labeling)?;
    let cells: Vec<Cell> = sub
        .cells()
        .iter()
        .filter(|c| is_completely_labeled(labeling, c))
        .cloned()
        .collect();
    if cells.is_empty() {
        return Err(Error::InvariantViolation(
            "valid Sperner instance without a completely labeled cell".into(),
        ));
    }
    Ok(CLReport {
        count: cells.len(),
        cells,
    })
}
