use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CellGeom, Subdivision, BOX_SLACK};
use crate::error::Error;
use crate::geometry::{BPoint, VertexId};
use crate::linalg::{self, LpOutcome};
use crate::rational::Rational;
use crate::report::{CheckMode, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationMode {
    /// Canonical form, corner presence, per-cell independence and the volume
    /// partition.
    Fast,
    /// Fast checks plus the pairwise face condition.
    Full,
}

impl FromStr for ValidationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(ValidationMode::Fast),
            "full" => Ok(ValidationMode::Full),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

pub(super) fn fast(sub: &Subdivision) -> ValidationReport {
    fast_violations(sub, CheckMode::Fast)
}

fn fast_violations(sub: &Subdivision, mode: CheckMode) -> ValidationReport {
    let n = sub.n();
    let mut violations = Vec::new();

    for i in 0..n {
        if sub.vertex_of(&BPoint::corner(n, i)).is_none() {
            violations.push(Violation::new(
                "missing-corner",
                format!("corner e_{} is not in the vertex table", i + 1),
            ));
        }
    }

    for (idx, cell) in sub.cells().iter().enumerate() {
        if !cell.is_strictly_increasing() {
            violations.push(
                Violation::new("repeated-vertex", "cell lists a vertex more than once")
                    .with_cells([idx]),
            );
        }
    }
    for (idx, pair) in sub.cells().windows(2).enumerate() {
        if pair[0] == pair[1] {
            violations.push(
                Violation::new("duplicate-cell", "cell appears more than once")
                    .with_cells([idx, idx + 1]),
            );
        }
    }

    let mut total = Rational::zero();
    for (idx, geom) in sub.geometry().iter().enumerate() {
        match geom {
            Some(g) => total += &g.volume,
            None => violations.push(
                Violation::new("degenerate-cell", "cell vertices are affinely dependent")
                    .with_cells([idx]),
            ),
        }
    }
    if total != 1 {
        violations.push(Violation::new(
            "volume-sum",
            format!("cell volumes sum to {total}, expected 1/1"),
        ));
    }

    ValidationReport::new(mode, sub.cells().len(), violations)
}

/// The face condition is settled locally when possible. If the fast checks
/// pass, every facet on the boundary of Δ belongs to one cell, and every other
/// facet to exactly two cells on opposite sides, then crossing a facet never
/// changes how many cells cover a point, so the volume sum forces every point
/// to be covered once. Around any point `p` the cells containing it are then
/// linked through facets containing `p`, and matched cells share the smallest
/// face carrying `p`; hence any two cells meet exactly in the hull of their
/// shared vertices. Only when this certificate fails are pairs examined one by
/// one, which also pinpoints the offending cells.
pub(super) fn full(sub: &Subdivision) -> ValidationReport {
    let base = fast_violations(sub, CheckMode::Full);
    let facets = facet_violations(sub);
    let certified = base.passed && facets.is_empty();
    let mut violations = base.violations;
    if !certified {
        violations.extend(facets);
        violations.extend(face_violations(sub));
    }
    ValidationReport::new(CheckMode::Full, sub.cells().len(), violations)
}

/// Facet matching: boundary facets once, interior facets twice with the two
/// cells on opposite sides.
fn facet_violations(sub: &Subdivision) -> Vec<Violation> {
    let n = sub.n();
    if n < 2 {
        return Vec::new();
    }
    let geom = sub.geometry();
    // facet -> (cell index, position of the omitted vertex)
    let mut owners: BTreeMap<Vec<VertexId>, Vec<(usize, usize)>> = BTreeMap::new();
    for (idx, cell) in sub.cells().iter().enumerate() {
        if geom[idx].is_none() || !cell.is_strictly_increasing() {
            continue;
        }
        for p in 0..n {
            let mut facet = cell.vertices().to_vec();
            facet.remove(p);
            owners.entry(facet).or_default().push((idx, p));
        }
    }

    let scaled = sub.scaled_vertices();
    let mut violations = Vec::new();
    for (facet, cells) in &owners {
        let ids: Vec<usize> = facet.iter().map(|v| v.0).collect();
        let on_boundary = (0..n).any(|k| facet.iter().all(|&v| sub.point(v).coord(k).is_zero()));
        let expected = if on_boundary { 1 } else { 2 };
        if cells.len() != expected {
            violations.push(
                Violation::new(
                    "unmatched-facet",
                    format!(
                        "{} facet {ids:?} belongs to {} cells, expected {expected}",
                        if on_boundary { "boundary" } else { "interior" },
                        cells.len()
                    ),
                )
                .with_cells(cells.iter().map(|&(c, _)| c))
                .with_vertices(ids.clone()),
            );
            continue;
        }
        if let [(a, p), (b, q)] = cells[..] {
            let apex = sub.cells()[b].vertices()[q];
            let signs = geom[a]
                .as_ref()
                .unwrap()
                .weight_signs(sub.point(apex), scaled[apex.0].as_ref());
            if signs[p] != Ordering::Less {
                violations.push(
                    Violation::new(
                        "facet-side",
                        format!("cells sharing facet {ids:?} lie on the same side"),
                    )
                    .with_cells([a, b])
                    .with_vertices(ids),
                );
            }
        }
    }
    violations
}

/// Pairwise face condition. Pairs are swept along the first coordinate so that
/// only cells with overlapping bounding boxes are examined.
fn face_violations(sub: &Subdivision) -> Vec<Violation> {
    let geom = sub.geometry();
    let mut order: Vec<usize> = (0..geom.len()).filter(|&i| geom[i].is_some()).collect();
    let lo0 = |i: usize| geom[i].as_ref().unwrap().lo[0];
    order.sort_by(|&a, &b| lo0(a).total_cmp(&lo0(b)));

    order
        .par_iter()
        .enumerate()
        .flat_map_iter(|(rank, &a)| {
            let ga = geom[a].as_ref().unwrap();
            order[rank + 1..]
                .iter()
                .take_while(move |&&b| lo0(b) <= ga.hi[0] + BOX_SLACK)
                .filter_map(move |&b| {
                    let gb = geom[b].as_ref().unwrap();
                    let (i, j) = if a < b { (a, b) } else { (b, a) };
                    let (gi, gj) = if a < b { (ga, gb) } else { (gb, ga) };
                    check_pair(sub, i, gi, j, gj)
                })
        })
        .collect()
}

/// Some facet hyperplane of cell `own` leaves every vertex of `other` on its
/// closed outer side, and the vertices lying on it are shared.
fn separated_by_facet(
    sub: &Subdivision,
    own: &CellGeom,
    other: &[VertexId],
    shared: &[VertexId],
) -> bool {
    let scaled = sub.scaled_vertices();
    let signs: Vec<Vec<Ordering>> = other
        .iter()
        .map(|&v| own.weight_signs(sub.point(v), scaled[v.0].as_ref()))
        .collect();
    (0..sub.n()).any(|k| {
        signs.iter().zip(other).all(|(s, v)| match s[k] {
            Ordering::Less => true,
            Ordering::Equal => shared.contains(v),
            Ordering::Greater => false,
        })
    })
}

/// Decides whether `S_i ∩ S_j` strictly exceeds the hull of the shared
/// vertices: maximize the weight on non-shared vertices of `S_i` over points
/// expressible in both cells.
fn overlap_beyond_shared(sub: &Subdivision, i: usize, j: usize, shared: &[VertexId]) -> bool {
    let n = sub.n();
    let ci = &sub.cells()[i];
    let cj = &sub.cells()[j];
    let pi = sub.cell_points(ci);
    let pj = sub.cell_points(cj);

    let mut a = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut row: Vec<Rational> = pi.iter().map(|p| p.coord(k).clone()).collect();
        row.extend(pj.iter().map(|p| -p.coord(k)));
        a.push(row);
    }
    let mut sum_row = vec![Rational::one(); n];
    sum_row.extend((0..n).map(|_| Rational::zero()));
    a.push(sum_row);
    let mut b = vec![Rational::zero(); n];
    b.push(Rational::one());

    let mut c: Vec<Rational> = ci
        .vertices()
        .iter()
        .map(|v| {
            if shared.contains(v) {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    c.extend((0..n).map(|_| Rational::zero()));

    match linalg::maximize(&a, &b, &c) {
        LpOutcome::Optimal(v) => v.is_positive(),
        LpOutcome::Infeasible => false,
        // Weights are bounded by the sum constraint.
        LpOutcome::Unbounded => true,
    }
}

fn check_pair(
    sub: &Subdivision,
    i: usize,
    gi: &CellGeom,
    j: usize,
    gj: &CellGeom,
) -> Option<Violation> {
    if !gi.may_overlap(gj) {
        return None;
    }
    let ci = &sub.cells()[i];
    let cj = &sub.cells()[j];
    let shared: Vec<VertexId> = ci
        .vertices()
        .iter()
        .copied()
        .filter(|&v| cj.contains(v))
        .collect();
    if shared.len() == sub.n() {
        // Identical cells; reported as duplicates by the fast checks.
        return None;
    }
    if separated_by_facet(sub, gi, cj.vertices(), &shared)
        || separated_by_facet(sub, gj, ci.vertices(), &shared)
    {
        return None;
    }
    if overlap_beyond_shared(sub, i, j, &shared) {
        let ids: Vec<usize> = shared.iter().map(|v| v.0).collect();
        return Some(
            Violation::new(
                "face-condition",
                format!("intersection is not the hull of shared vertices {ids:?}"),
            )
            .with_cells([i, j]),
        );
    }
    None
}
