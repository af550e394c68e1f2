//! Canonical JSON instance documents.
//!
//! ```json
//! {"n":3,"vertices":[{"id":0,"coords":["1/1","0/1","0/1"],"label":1},...],"cells":[[0,3,6],...]}
//! ```
//!
//! Ids are dense from 0 in table order, each cell lists ascending ids, cells
//! are sorted, rationals are written `p/q` in lowest terms, and the `label`
//! field is present only when a labeling is attached. Output is compact with
//! the field order above, so serializing a parsed canonical document
//! reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BPoint, Cell};
use crate::labeling::Labeling;
use crate::rational::Rational;
use crate::subdivision::Subdivision;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: usize,
    pub coords: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub vertices: Vec<VertexEntry>,
    pub cells: Vec<Vec<usize>>,
}

impl InstanceDocument {
    pub fn from_instance(sub: &Subdivision, labeling: Option<&Labeling>) -> Self {
        let vertices = sub
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, p)| VertexEntry {
                id,
                coords: p.coords().to_vec(),
                label: labeling.and_then(|l| l.as_slice().get(id).copied().flatten()),
            })
            .collect();
        InstanceDocument {
            n: sub.n(),
            vertices,
            cells: sub.cells().iter().map(Cell::indices).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance documents always serialize")
    }

    /// Builds the subdivision, plus the labeling when any vertex has a label.
    pub fn into_instance(self) -> Result<(Subdivision, Option<Labeling>)> {
        let mut points = Vec::with_capacity(self.vertices.len());
        let mut labels = Vec::with_capacity(self.vertices.len());
        for (expected, entry) in self.vertices.into_iter().enumerate() {
            if entry.id != expected {
                return Err(Error::Parse(format!(
                    "vertex ids must be dense from 0; found {} at position {expected}",
                    entry.id
                )));
            }
            points.push(BPoint::new(entry.coords)?);
            labels.push(entry.label);
        }
        let cells = self.cells.into_iter().map(Cell::from_indices).collect();
        let sub = Subdivision::new(self.n, points, cells)?;
        let labeling = labels
            .iter()
            .any(Option::is_some)
            .then(|| Labeling::from_partial(labels));
        Ok((sub, labeling))
    }
}

pub fn write_instance(sub: &Subdivision, labeling: Option<&Labeling>) -> String {
    InstanceDocument::from_instance(sub, labeling).to_json()
}

pub fn read_instance(text: &str) -> Result<(Subdivision, Option<Labeling>)> {
    InstanceDocument::parse(text)?.into_instance()
}
