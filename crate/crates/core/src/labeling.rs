//! Sperner labelings: each vertex gets a label from the one-based indices of
//! its positive coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{support, BPoint, Cell, VertexId};
use crate::report::{CheckMode, ValidationReport, Violation};
use crate::subdivision::Subdivision;

/// Per-vertex labels in `1..=n`, indexed by vertex id. `None` marks a vertex
/// with no label (only ever produced by parsing partial documents).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<Option<usize>>,
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Self {
        Labeling {
            labels: labels.into_iter().map(Some).collect(),
        }
    }

    pub fn from_partial(labels: Vec<Option<usize>>) -> Self {
        Labeling { labels }
    }

    pub fn get(&self, v: VertexId) -> Option<usize> {
        self.labels.get(v.0).copied().flatten()
    }

    /// Label of a vertex of a validated labeling.
    pub fn label(&self, v: VertexId) -> usize {
        self.get(v)
            .unwrap_or_else(|| panic!("vertex {} has no label", v.0))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.labels
    }

    /// Labels of a cell's vertices in cell order.
    pub fn cell_labels(&self, cell: &Cell) -> Vec<usize> {
        cell.vertices().iter().map(|&v| self.label(v)).collect()
    }

    /// Returns a copy with one vertex relabeled.
    pub fn with_label(&self, v: VertexId, label: usize) -> Self {
        let mut labels = self.labels.clone();
        if labels.len() <= v.0 {
            labels.resize(v.0 + 1, None);
        }
        labels[v.0] = Some(label);
        Labeling { labels }
    }
}

pub fn validate_labeling(sub: &Subdivision, labeling: &Labeling) -> ValidationReport {
    let n = sub.n();
    let mut violations = Vec::new();
    for (id, point) in sub.vertices().iter().enumerate() {
        let Some(label) = labeling.get(VertexId(id)) else {
            violations.push(
                Violation::new("missing-label", format!("vertex {id} has no label"))
                    .with_vertices([id]),
            );
            continue;
        };
        if label == 0 || label > n {
            violations.push(
                Violation::new(
                    "label-out-of-range",
                    format!("vertex {id} has label {label}, outside 1..={n}"),
                )
                .with_vertices([id]),
            );
            continue;
        }
        let supp = support(point);
        if !supp.contains(&label) {
            violations.push(
                Violation::new(
                    "sperner-condition",
                    format!("vertex {id} {point:?} has label {label}, support is {supp:?}"),
                )
                .with_vertices([id]),
            );
        }
    }
    if labeling.len() > sub.vertices().len() {
        violations.push(Violation::new(
            "extra-labels",
            format!(
                "{} labels for {} vertices",
                labeling.len(),
                sub.vertices().len()
            ),
        ));
    }
    ValidationReport::new(CheckMode::Labeling, sub.vertices().len(), violations)
}

pub(crate) fn require_valid_labeling(sub: &Subdivision, labeling: &Labeling) -> Result<()> {
    let report = validate_labeling(sub, labeling);
    if report.passed {
        Ok(())
    } else {
        Err(Error::InvalidLabeling(Box::new(report)))
    }
}

/// Uniform choice from each vertex's support, driven by a ChaCha8 stream
/// seeded with `seed` and consumed in vertex-id order.
pub fn random_sperner_labeling(sub: &Subdivision, seed: u64) -> Labeling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = sub
        .vertices()
        .iter()
        .map(|p| {
            let supp = support(p);
            supp[rng.random_range(0..supp.len())]
        })
        .collect();
    Labeling::new(labels)
}

/// Labels each vertex `v` with the smallest `i` such that `v_i > 0` and
/// `f(v)_i ≤ v_i`. Such an index exists because both points sum to one.
pub fn labeling_from_map(
    sub: &Subdivision,
    f: impl Fn(&BPoint) -> Result<BPoint>,
) -> Result<Labeling> {
    let labels = sub
        .vertices()
        .iter()
        .map(|v| {
            let image = f(v)?;
            if image.dim() != v.dim() {
                return Err(Error::DimensionMismatch {
                    expected: v.dim(),
                    found: image.dim(),
                });
            }
            v.coords()
                .iter()
                .zip(image.coords())
                .position(|(vi, fi)| vi.is_positive() && fi <= vi)
                .map(|i| i + 1)
                .ok_or_else(|| Error::InvariantViolation(format!("no admissible label for {v:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Labeling::new(labels))
}
