//! Subdivision generators, selectable by name.
//!
//! The edgewise scheme works in partial-sum coordinates: a grid point
//! `k/m` (with `k` a composition of `m` into `n` parts) maps to
//! `y_j = k_1 + ... + k_j` for `j < n`, which lies in the scaled Kuhn simplex
//! `0 ≤ y_1 ≤ ... ≤ y_{n-1} ≤ m`. That region is a union of Freudenthal cells
//! `conv(z, z + e_π(1), z + e_π(1) + e_π(2), ...)` for integer base corners `z`
//! and permutations `π`; a cell is kept iff all its corners satisfy the
//! ordering constraints. Mapping back to `k` is unimodular, so the cells form
//! a face-to-face triangulation whose vertices are exactly the `1/m` grid.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geometry::{BPoint, Cell, VertexId};
use crate::rational::Rational;

use super::Subdivision;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    /// Grid resolution; every edge of the simplex is cut into `m` pieces.
    pub m: usize,
    /// Number of barycentric refinement passes (ignored by `edgewise`).
    pub depth: usize,
}

impl Default for SchemeParams {
    fn default() -> Self {
        SchemeParams { m: 1, depth: 1 }
    }
}

pub trait SubdivisionScheme: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn generate(&self, n: usize, params: &SchemeParams) -> Result<Subdivision>;
}

pub struct Edgewise;

impl SubdivisionScheme for Edgewise {
    fn name(&self) -> &'static str {
        "edgewise"
    }

    fn description(&self) -> &'static str {
        "Freudenthal/Kuhn edgewise subdivision on the 1/m grid"
    }

    fn generate(&self, n: usize, params: &SchemeParams) -> Result<Subdivision> {
        edgewise_subdivision(n, params.m)
    }
}

pub struct Barycentric;

impl SubdivisionScheme for Barycentric {
    fn name(&self) -> &'static str {
        "barycentric"
    }

    fn description(&self) -> &'static str {
        "edgewise subdivision followed by `depth` barycentric refinements"
    }

    fn generate(&self, n: usize, params: &SchemeParams) -> Result<Subdivision> {
        let mut sub = edgewise_subdivision(n, params.m)?;
        for _ in 0..params.depth {
            sub = barycentric_refine(&sub)?;
        }
        Ok(sub)
    }
}

/// Name-keyed collection of subdivision schemes.
pub struct SchemeRegistry {
    schemes: Vec<Box<dyn SubdivisionScheme>>,
}

impl SchemeRegistry {
    pub fn empty() -> Self {
        SchemeRegistry {
            schemes: Vec::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = SchemeRegistry::empty();
        reg.register(Box::new(Edgewise));
        reg.register(Box::new(Barycentric));
        reg
    }

    /// Adds a scheme, replacing any previous one with the same name.
    pub fn register(&mut self, scheme: Box<dyn SubdivisionScheme>) {
        self.schemes.retain(|s| s.name() != scheme.name());
        self.schemes.push(scheme);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SubdivisionScheme> {
        self.schemes
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "subdivision scheme",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.schemes.iter().map(|s| s.name()).collect()
    }
}

impl Default for SchemeRegistry {
    fn default() -> Self {
        SchemeRegistry::with_builtins()
    }
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// Builds a subdivision from cells given as point lists, numbering vertices
/// in descending lexicographic order of their coordinates (so `e_1` is 0).
fn assemble(n: usize, cells: Vec<Vec<BPoint>>) -> Result<Subdivision> {
    let points: BTreeSet<&BPoint> = cells.iter().flatten().collect();
    let ordered: Vec<BPoint> = points.into_iter().rev().cloned().collect();
    let ids: HashMap<&BPoint, usize> = ordered.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let cells = cells
        .iter()
        .map(|pts| Cell::new(pts.iter().map(|p| VertexId(ids[p])).collect()))
        .collect();
    Subdivision::new(n, ordered, cells)
}

/// Edgewise subdivision of the `(n-1)`-simplex at resolution `m`: vertices on
/// the `1/m` grid and `m^(n-1)` congruent cells.
pub fn edgewise_subdivision(n: usize, m: usize) -> Result<Subdivision> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "edgewise subdivision needs n >= 1 and m >= 1 (got n={n}, m={m})"
        )));
    }
    if n == 1 {
        return Ok(Subdivision::trivial(1));
    }
    let d = n - 1;
    let mi = m as i64;
    let to_point = |y: &[i64]| -> BPoint {
        let mut k = Vec::with_capacity(n);
        let mut prev = 0;
        for &yj in y {
            k.push(yj - prev);
            prev = yj;
        }
        k.push(mi - prev);
        BPoint::new(k.into_iter().map(|kj| Rational::new(kj, mi)).collect())
            .expect("grid point lies on the simplex")
    };
    let in_region = |y: &[i64]| y[0] >= 0 && y.windows(2).all(|w| w[0] <= w[1]) && y[d - 1] <= mi;

    let perms = permutations(d);
    let mut cells = Vec::new();
    let mut base = vec![0i64; d];
    loop {
        for perm in &perms {
            let mut corner = base.clone();
            let mut chain = vec![corner.clone()];
            for &axis in perm {
                corner[axis] += 1;
                chain.push(corner.clone());
            }
            if chain.iter().all(|y| in_region(y)) {
                cells.push(chain.iter().map(|y| to_point(y)).collect());
            }
        }
        // Odometer over {0..m-1}^d.
        let mut i = 0;
        while i < d {
            base[i] += 1;
            if base[i] < mi {
                break;
            }
            base[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    assemble(n, cells)
}

/// Replaces every cell by the `n!` cells spanned by barycenters of its
/// complete face chains.
pub fn barycentric_refine(sub: &Subdivision) -> Result<Subdivision> {
    sub.require_valid()?;
    let n = sub.n();
    let perms = permutations(n);
    let mut face_centers: HashMap<Vec<VertexId>, BPoint> = HashMap::new();
    let mut cells = Vec::with_capacity(sub.cells().len() * perms.len());
    for cell in sub.cells() {
        for perm in &perms {
            let mut face = Vec::with_capacity(n);
            let mut chain = Vec::with_capacity(n);
            for &pos in perm {
                face.push(cell.vertices()[pos]);
                let mut key = face.clone();
                key.sort();
                let center = face_centers
                    .entry(key)
                    .or_insert_with_key(|k| {
                        BPoint::barycenter(k.iter().map(|&v| sub.point(v)))
                            .expect("face is nonempty")
                    })
                    .clone();
                chain.push(center);
            }
            cells.push(chain);
        }
    }
    assemble(n, cells)
}
