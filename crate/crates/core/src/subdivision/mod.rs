//! Simplicial subdivisions of the unit simplex.

mod scheme;
mod validate;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

pub use scheme::{
    barycentric_refine, edgewise_subdivision, Barycentric, Edgewise, SchemeParams, SchemeRegistry,
    SubdivisionScheme,
};
pub use validate::ValidationMode;

use crate::error::{Error, Result};
use crate::geometry::{classify, column_matrix, BPoint, BarycentricCoords, Cell, VertexId};
use crate::linalg::{self, Matrix, Scaled};
use crate::rational::Rational;
use crate::report::ValidationReport;

/// Slack for the floating-point bounding boxes. They only prefilter; every
/// decision is made exactly afterwards.
pub(super) const BOX_SLACK: f64 = 1e-9;

/// Per-cell data derived once: inverse of the vertex matrix, an integer copy
/// of its rows for fast sign tests, and a bounding box.
#[derive(Clone, Debug)]
pub(crate) struct CellGeom {
    pub inv: Matrix,
    pub volume: Rational,
    /// Rows of `inv`, each scaled to integers; `None` if they overflow.
    pub facets: Option<Vec<Scaled>>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl CellGeom {
    fn new(pts: &[&BPoint]) -> Option<Self> {
        let n = pts.len();
        let (inv, det) = linalg::inverse(&column_matrix(pts))?;
        let facets = inv.iter().map(|row| linalg::integer_scaled(row)).collect();
        let coord = |k: usize| pts.iter().map(move |p| p.coord(k).to_f64());
        Some(CellGeom {
            facets,
            lo: (0..n)
                .map(|k| coord(k).fold(f64::INFINITY, f64::min))
                .collect(),
            hi: (0..n)
                .map(|k| coord(k).fold(f64::NEG_INFINITY, f64::max))
                .collect(),
            inv,
            volume: det.abs(),
        })
    }

    pub fn may_contain(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (lo, hi))| lo - BOX_SLACK <= *c && *c <= hi + BOX_SLACK)
    }

    pub fn may_overlap(&self, other: &CellGeom) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((alo, ahi), (blo, bhi))| alo - BOX_SLACK <= *bhi && blo - BOX_SLACK <= *ahi)
    }

    /// Affine weights of `x` (possibly negative).
    pub fn weights(&self, x: &BPoint) -> Vec<Rational> {
        linalg::mat_vec(&self.inv, x.coords())
    }

    /// Exact sign of every weight of `x`, using integers when possible.
    pub fn weight_signs(&self, x: &BPoint, scaled: Option<&Scaled>) -> Vec<Ordering> {
        let fast = scaled.zip(self.facets.as_ref()).and_then(|(p, rows)| {
            rows.iter()
                .map(|row| linalg::dot_sign(&row.nums, &p.nums))
                .collect::<Option<Vec<_>>>()
        });
        fast.unwrap_or_else(|| {
            self.weights(x)
                .iter()
                .map(|w| w.cmp(&Rational::zero()))
                .collect()
        })
    }

    /// Same as [`CellGeom::weights`], through integers when possible.
    pub fn weights_with(&self, x: &BPoint, scaled: Option<&Scaled>) -> Vec<Rational> {
        scaled
            .zip(self.facets.as_ref())
            .and_then(|(p, rows)| linalg::scaled_mat_vec(rows, p))
            .unwrap_or_else(|| self.weights(x))
    }
}

/// Uniform bucket grid over the first `n - 1` coordinates; each bucket lists,
/// in canonical order, the cells whose bounding box meets it.
#[derive(Clone, Debug)]
struct LocateIndex {
    res: usize,
    dims: usize,
    buckets: Vec<Vec<u32>>,
}

impl LocateIndex {
    /// Aim for a few cells per bucket without letting the grid outgrow the
    /// cell list.
    fn build(n: usize, geom: &[Option<CellGeom>]) -> Self {
        let dims = n.saturating_sub(1);
        let target = (4 * geom.len()).max(1) as f64;
        let res = if dims == 0 {
            1
        } else {
            (target.powf(1.0 / dims as f64).floor() as usize).clamp(1, 256)
        };
        let mut buckets = vec![Vec::new(); res.pow(dims as u32)];
        for (idx, g) in geom.iter().enumerate() {
            let Some(g) = g else { continue };
            let ranges: Vec<(usize, usize)> = (0..dims)
                .map(|k| {
                    (
                        Self::slot(res, g.lo[k] - BOX_SLACK),
                        Self::slot(res, g.hi[k] + BOX_SLACK),
                    )
                })
                .collect();
            let mut cursor: Vec<usize> = ranges.iter().map(|r| r.0).collect();
            loop {
                buckets[Self::flat(res, &cursor)].push(idx as u32);
                let Some(k) = (0..dims).find(|&k| cursor[k] < ranges[k].1) else {
                    break;
                };
                cursor[k] += 1;
                for (c, r) in cursor[..k].iter_mut().zip(&ranges) {
                    *c = r.0;
                }
            }
        }
        LocateIndex { res, dims, buckets }
    }

    fn slot(res: usize, v: f64) -> usize {
        ((v * res as f64).floor().max(0.0) as usize).min(res - 1)
    }

    fn flat(res: usize, cursor: &[usize]) -> usize {
        cursor.iter().rev().fold(0, |acc, &c| acc * res + c)
    }

    fn candidates(&self, x: &[f64]) -> &[u32] {
        let cursor: Vec<usize> = x[..self.dims]
            .iter()
            .map(|&v| Self::slot(self.res, v))
            .collect();
        &self.buckets[Self::flat(self.res, &cursor)]
    }
}

/// Vertex table plus cell list. Vertex points are distinct, every cell has
/// exactly `n` vertex ids, and cells are kept sorted.
#[derive(Clone)]
pub struct Subdivision {
    n: usize,
    vertices: Vec<BPoint>,
    cells: Vec<Cell>,
    geom: OnceLock<Vec<Option<CellGeom>>>,
    scaled: OnceLock<Vec<Option<Scaled>>>,
    index: OnceLock<LocateIndex>,
    fast: OnceLock<ValidationReport>,
    full: OnceLock<ValidationReport>,
}

impl Subdivision {
    pub fn new(n: usize, vertices: Vec<BPoint>, cells: Vec<Cell>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
            if !seen.insert(v) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {i} duplicates the point {v:?}"
                )));
            }
        }
        for cell in &cells {
            if cell.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "cell {:?} has {} vertices, expected {n}",
                    cell.indices(),
                    cell.len()
                )));
            }
            if let Some(v) = cell.vertices().iter().find(|v| v.0 >= vertices.len()) {
                return Err(Error::InvalidArgument(format!(
                    "cell references unknown vertex {}",
                    v.0
                )));
            }
        }
        let mut cells = cells;
        cells.sort();
        Ok(Subdivision {
            n,
            vertices,
            cells,
            geom: OnceLock::new(),
            scaled: OnceLock::new(),
            index: OnceLock::new(),
            fast: OnceLock::new(),
            full: OnceLock::new(),
        })
    }

    /// The subdivision consisting of the simplex alone.
    pub fn trivial(n: usize) -> Self {
        let vertices = (0..n).map(|i| BPoint::corner(n, i)).collect();
        Subdivision::new(n, vertices, vec![Cell::from_indices(0..n)])
            .expect("trivial subdivision is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[BPoint] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn point(&self, v: VertexId) -> &BPoint {
        &self.vertices[v.0]
    }

    pub fn cell_points(&self, cell: &Cell) -> Vec<&BPoint> {
        cell.vertices().iter().map(|&v| self.point(v)).collect()
    }

    pub fn vertex_of(&self, point: &BPoint) -> Option<VertexId> {
        self.vertices.iter().position(|p| p == point).map(VertexId)
    }

    pub fn cell_index(&self, cell: &Cell) -> Option<usize> {
        self.cells.binary_search(cell).ok()
    }

    pub(crate) fn geometry(&self) -> &[Option<CellGeom>] {
        self.geom.get_or_init(|| {
            use rayon::prelude::*;
            self.cells
                .par_iter()
                .map(|cell| CellGeom::new(&self.cell_points(cell)))
                .collect()
        })
    }

    /// Vertex coordinates scaled to integers, for the fast sign tests.
    pub(crate) fn scaled_vertices(&self) -> &[Option<Scaled>] {
        self.scaled.get_or_init(|| {
            self.vertices
                .iter()
                .map(|v| linalg::integer_scaled(v.coords()))
                .collect()
        })
    }

    pub fn validate(&self, mode: ValidationMode) -> ValidationReport {
        match mode {
            ValidationMode::Fast => self.fast_report().clone(),
            ValidationMode::Full => self.full.get_or_init(|| validate::full(self)).clone(),
        }
    }

    pub(crate) fn fast_report(&self) -> &ValidationReport {
        self.fast.get_or_init(|| validate::fast(self))
    }

    /// Errors with the fast-mode report unless it passed.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.fast_report();
        if report.passed {
            Ok(())
        } else {
            Err(Error::InvalidSubdivision(Box::new(report.clone())))
        }
    }

    /// Every cell containing `x`, with the exact weights of `x` in that cell,
    /// in canonical cell order.
    pub fn locate(&self, x: &BPoint) -> Result<Vec<(Cell, BarycentricCoords)>> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        let approx: Vec<f64> = x.coords().iter().map(Rational::to_f64).collect();
        let scaled = linalg::integer_scaled(x.coords());
        let geom = self.geometry();
        let index = self.index.get_or_init(|| LocateIndex::build(self.n, geom));
        let hits = index
            .candidates(&approx)
            .iter()
            .filter_map(|&idx| {
                let geom = geom[idx as usize].as_ref()?;
                if !geom.may_contain(&approx) {
                    return None;
                }
                if geom
                    .weight_signs(x, scaled.as_ref())
                    .contains(&Ordering::Less)
                {
                    return None;
                }
                classify(geom.weights_with(x, scaled.as_ref()))
                    .inside()
                    .map(|w| (self.cells[idx as usize].clone(), w))
            })
            .collect();
        Ok(hits)
    }

    /// Normalized volume of each cell (zero for degenerate cells).
    pub fn cell_volumes(&self) -> Vec<Rational> {
        self.geometry()
            .iter()
            .map(|g| g.as_ref().map_or_else(Rational::zero, |g| g.volume.clone()))
            .collect()
    }
}

impl PartialEq for Subdivision {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices && self.cells == other.cells
    }
}

impl Eq for Subdivision {}

impl fmt::Debug for Subdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subdivision")
            .field("n", &self.n)
            .field("vertices", &self.vertices)
            .field("cells", &self.cells)
            .finish()
    }
}
