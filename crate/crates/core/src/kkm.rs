//! Cover sets `C_1..C_n` built from a labeled subdivision.
//!
//! For label `i` and cell `S`, the region `T_S` consists of the points of `S`
//! whose weight on some `i`-labeled vertex of `S` is at least `1/n`; `C_i` is
//! the union of these regions. Every point of a cell gives weight at least
//! `1/n` to one of the cell's `n` vertices, which is what makes the sets cover
//! each face `Δ_J` by `C_j, j ∈ J`. A point lying in every `C_i` yields a
//! completely labeled cell: the witness cell for label 1 must contain every
//! other witness vertex, because a vertex with positive weight lies in every
//! face containing the point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BPoint, BarycentricCoords, Cell, VertexId};
use crate::labeling::{require_valid_labeling, validate_labeling, Labeling};
use crate::rational::Rational;
use crate::report::{CheckMode, ValidationReport, Violation};
use crate::sperner::{find_completely_labeled, is_completely_labeled};
use crate::subdivision::{Subdivision, ValidationMode};

/// The positions within `cell` of the vertices that carry one label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPiece {
    pub cell: Cell,
    pub positions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KKMCover {
    pub threshold: Rational,
    /// Pieces per label `1..=n`, each list in canonical cell order.
    pub pieces: BTreeMap<usize, Vec<CoverPiece>>,
}

impl KKMCover {
    pub fn pieces_for(&self, label: usize) -> &[CoverPiece] {
        self.pieces.get(&label).map_or(&[], Vec::as_slice)
    }

    /// Restores canonical order in every piece list, e.g. after reading a
    /// hand-written cover.
    pub fn normalize(&mut self) {
        for list in self.pieces.values_mut() {
            for piece in list.iter_mut() {
                piece.positions.sort_unstable();
            }
            list.sort_by(|a, b| a.cell.cmp(&b.cell));
        }
    }

    /// Labels whose cover set is empty.
    pub fn empty_labels(&self) -> Vec<usize> {
        self.pieces
            .iter()
            .filter(|(_, p)| p.is_empty())
            .map(|(&l, _)| l)
            .collect()
    }
}

/// Evidence that a point lies in `C_label`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: usize,
    pub cell: Cell,
    pub vertex: VertexId,
    pub weight: Rational,
    pub coords: BarycentricCoords,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(Witness),
    NotMember,
}

impl Membership {
    pub fn witness(self) -> Option<Witness> {
        match self {
            Membership::Member(w) => Some(w),
            Membership::NotMember => None,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// A nonempty set of one-based coordinate indices naming the face `Δ_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceIndexSet(Vec<usize>);

impl FaceIndexSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::InvalidArgument(
                "face index set must be nonempty".into(),
            ));
        }
        if let Some(&bad) = indices.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::LabelOutOfRange { label: bad, n });
        }
        Ok(FaceIndexSet(indices))
    }

    /// Every nonempty subset of `1..=n`.
    pub fn all(n: usize) -> Vec<FaceIndexSet> {
        (1u64..(1 << n))
            .map(|mask| {
                FaceIndexSet(
                    (0..n)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| b + 1)
                        .collect(),
                )
            })
            .collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

pub fn build_cover(sub: &Subdivision, labeling: &Labeling) -> Result<KKMCover> {
    let n = sub.n();
    build_cover_with_threshold(sub, labeling, Rational::new(1, n as i64))
}

/// Same construction with a custom threshold `0 < t ≤ 1/n`.
pub fn build_cover_with_threshold(
    sub: &Subdivision,
    labeling: &Labeling,
    threshold: Rational,
) -> Result<KKMCover> {
    sub.require_valid()?;
    require_valid_labeling(sub, labeling)?;
    let n = sub.n();
    if !threshold.is_positive() || threshold > Rational::new(1, n as i64) {
        return Err(Error::InvalidArgument(format!(
            "threshold {threshold} must lie in (0, 1/{n}]"
        )));
    }
    let mut pieces: BTreeMap<usize, Vec<CoverPiece>> = (1..=n).map(|i| (i, Vec::new())).collect();
    for cell in sub.cells() {
        for label in 1..=n {
            let positions: Vec<usize> = cell
                .vertices()
                .iter()
                .enumerate()
                .filter(|(_, &v)| labeling.label(v) == label)
                .map(|(p, _)| p)
                .collect();
            if !positions.is_empty() {
                pieces.get_mut(&label).unwrap().push(CoverPiece {
                    cell: cell.clone(),
                    positions,
                });
            }
        }
    }
    Ok(KKMCover { threshold, pieces })
}

/// Membership of `x` in `C_label`. Among all qualifying witnesses the one with
/// the smallest `(cell, vertex position)` is returned. Piece lists must be in
/// canonical order (see [`KKMCover::normalize`]).
pub fn member(cover: &KKMCover, sub: &Subdivision, label: usize, x: &BPoint) -> Result<Membership> {
    let n = sub.n();
    if label == 0 || label > n {
        return Err(Error::LabelOutOfRange { label, n });
    }
    let pieces = cover.pieces_for(label);
    for (cell, coords) in sub.locate(x)? {
        let Ok(found) = pieces.binary_search_by(|p| p.cell.cmp(&cell)) else {
            continue;
        };
        for &p in &pieces[found].positions {
            let Some(weight) = coords.weights().get(p) else {
                continue;
            };
            if *weight >= cover.threshold {
                return Ok(Membership::Member(Witness {
                    label,
                    vertex: cell.vertices()[p],
                    weight: weight.clone(),
                    cell,
                    coords,
                }));
            }
        }
    }
    Ok(Membership::NotMember)
}

/// Checks the premises under which every face `Δ_J` is covered by
/// `⋃_{j∈J} C_j`: the labeling obeys the Sperner condition, the subdivision
/// passes full validation, and the cover is exactly what `build_cover`
/// produces for them.
pub fn verify_covering_certificate(
    cover: &KKMCover,
    sub: &Subdivision,
    labeling: &Labeling,
) -> ValidationReport {
    let mut violations = Vec::new();

    let lab_report = validate_labeling(sub, labeling);
    for v in &lab_report.violations {
        violations.push(
            Violation::new("labeling-premise", format!("{}: {}", v.kind, v.detail))
                .with_vertices(v.vertices.clone()),
        );
    }

    let sub_report = sub.validate(ValidationMode::Full);
    for v in &sub_report.violations {
        violations.push(
            Violation::new("subdivision-premise", format!("{}: {}", v.kind, v.detail))
                .with_cells(v.cells.clone()),
        );
    }

    if lab_report.passed && sub_report.passed {
        match build_cover(sub, labeling) {
            Ok(expected) if expected == *cover => {}
            Ok(expected) => {
                let detail = if expected.threshold != cover.threshold {
                    format!("threshold {} differs from 1/{}", cover.threshold, sub.n())
                } else {
                    "pieces differ from the construction".to_string()
                };
                violations.push(Violation::new("cover-premise", detail));
            }
            Err(e) => violations.push(Violation::new("cover-premise", e.to_string())),
        }
    } else {
        violations.push(Violation::new(
            "cover-premise",
            "cover cannot be rebuilt from an invalid instance",
        ));
    }

    ValidationReport::new(CheckMode::Certificate, 3, violations)
}

/// All points of `Δ_J` with coordinates in `(1/denom)ℤ`, zero outside `J`.
pub fn face_grid(n: usize, face: &FaceIndexSet, denom: u32) -> Vec<BPoint> {
    fn compositions(total: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let d = denom as i64;
    let mut comps = Vec::new();
    compositions(d, face.indices().len(), &mut Vec::new(), &mut comps);
    comps
        .into_iter()
        .map(|comp| {
            let mut coords = vec![Rational::zero(); n];
            for (&j, k) in face.indices().iter().zip(comp) {
                coords[j - 1] = Rational::new(k, d);
            }
            BPoint::new(coords).expect("grid point lies on the simplex")
        })
        .collect()
}

/// Empirical cross-check of the covering condition on one face: every grid
/// point of `Δ_J` must belong to some `C_j` with `j ∈ J`.
pub fn verify_covering_sampled(
    cover: &KKMCover,
    sub: &Subdivision,
    face: &FaceIndexSet,
    denom: u32,
) -> ValidationReport {
    if denom == 0 {
        return ValidationReport::new(
            CheckMode::Sampled,
            0,
            vec![Violation::new(
                "invalid-argument",
                "denominator must be at least 1",
            )],
        );
    }
    let points = face_grid(sub.n(), face, denom);
    let mut violations = Vec::new();
    for x in &points {
        let mut covered = false;
        for &j in face.indices() {
            match member(cover, sub, j, x) {
                Ok(Membership::Member(_)) => {
                    covered = true;
                    break;
                }
                Ok(Membership::NotMember) => {}
                Err(e) => {
                    violations.push(Violation::new("membership-error", format!("{x:?}: {e}")));
                }
            }
        }
        if !covered {
            violations.push(Violation::new(
                "uncovered",
                format!("{x:?} lies in no C_j for j in {:?}", face.indices()),
            ));
        }
    }
    ValidationReport::new(CheckMode::Sampled, points.len(), violations)
}

/// The barycenter of the first completely labeled cell together with one
/// witness per label, each of weight exactly `1/n`.
pub fn intersection_point(
    sub: &Subdivision,
    labeling: &Labeling,
) -> Result<(BPoint, Vec<Witness>)> {
    let report = find_completely_labeled(sub, labeling)?;
    let cell = &report.cells[0];
    let x = BPoint::barycenter(sub.cell_points(cell))?;
    let cover = build_cover(sub, labeling)?;
    let mut witnesses = Vec::with_capacity(sub.n());
    for label in 1..=sub.n() {
        let w = member(&cover, sub, label, &x)?.witness().ok_or_else(|| {
            Error::InvariantViolation(format!("barycenter of a CL cell is not in C_{label}"))
        })?;
        if w.weight != cover.threshold {
            return Err(Error::InvariantViolation(format!(
                "witness weight {} for label {label} differs from {}",
                w.weight, cover.threshold
            )));
        }
        witnesses.push(w);
    }
    Ok((x, witnesses))
}

/// Recovers a completely labeled cell from a point of `⋂ C_i`: the witness
/// cell for label 1.
pub fn extract_cl_simplex(
    cover: &KKMCover,
    sub: &Subdivision,
    labeling: &Labeling,
    x: &BPoint,
) -> Result<Cell> {
    sub.require_valid()?;
    require_valid_labeling(sub, labeling)?;
    let mut witnesses = Vec::with_capacity(sub.n());
    for label in 1..=sub.n() {
        match member(cover, sub, label, x)? {
            Membership::Member(w) => witnesses.push(w),
            Membership::NotMember => return Err(Error::NotInIntersection(label)),
        }
    }
    let first = witnesses[0].cell.clone();
    for w in &witnesses[1..] {
        if !first.contains(w.vertex) {
            return Err(Error::InvariantViolation(format!(
                "witness vertex {} for label {} is not a vertex of the label-1 cell",
                w.vertex.0, w.label
            )));
        }
    }
    if !is_completely_labeled(labeling, &first) {
        return Err(Error::InvariantViolation(format!(
            "cell {:?} is not completely labeled",
            first.indices()
        )));
    }
    Ok(first)
}

/// First cell (canonical order) containing `x` that has an `label`-labeled
/// vertex, i.e. a witness for `x ∈ D_label` under the naive construction.
pub fn naive_member(
    sub: &Subdivision,
    labeling: &Labeling,
    label: usize,
    x: &BPoint,
) -> Result<Option<Cell>> {
    Ok(sub
        .locate(x)?
        .into_iter()
        .map(|(c, _)| c)
        .find(|c| c.vertices().iter().any(|&v| labeling.get(v) == Some(label))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaiveFlag {
    pub vertex: VertexId,
    pub coords: BPoint,
    /// For each label in order, the first cell placing the vertex in `D_label`.
    pub via: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaiveReport {
    pub flagged: Vec<NaiveFlag>,
}

/// Vertices lying in every naive set `D_i` (the union of cells with an
/// `i`-labeled vertex) but in no completely labeled cell.
pub fn naive_cover_check(sub: &Subdivision, labeling: &Labeling) -> Result<NaiveReport> {
    sub.require_valid()?;
    require_valid_labeling(sub, labeling)?;
    let mut flagged = Vec::new();
    for (id, point) in sub.vertices().iter().enumerate() {
        let carriers: Vec<Cell> = sub.locate(point)?.into_iter().map(|(c, _)| c).collect();
        if carriers.iter().any(|c| is_completely_labeled(labeling, c)) {
            continue;
        }
        let via: Option<Vec<Cell>> = (1..=sub.n())
            .map(|label| {
                carriers
                    .iter()
                    .find(|c| c.vertices().iter().any(|&v| labeling.label(v) == label))
                    .cloned()
            })
            .collect();
        if let Some(via) = via {
            flagged.push(NaiveFlag {
                vertex: VertexId(id),
                coords: point.clone(),
                via,
            });
        }
    }
    Ok(NaiveReport { flagged })
}

/// Exact corners of the region `{λ_p ≥ threshold}` inside a cell: the vertex
/// at `position` and the points at parameter `threshold` along each edge
/// leaving it.
pub fn piece_region(
    sub: &Subdivision,
    cell: &Cell,
    position: usize,
    threshold: &Rational,
) -> Vec<BPoint> {
    let pts = sub.cell_points(cell);
    let apex = pts[position];
    let rest = Rational::one() - threshold;
    let mut corners = vec![apex.clone()];
    for (q, other) in pts.iter().enumerate() {
        if q == position {
            continue;
        }
        let coords = apex
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| threshold * a + &rest * b)
            .collect();
        corners.push(BPoint::new(coords).expect("convex combination stays on the simplex"));
    }
    corners
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{self, A, B, C, D, E, E1, E2, E3};
    use crate::subdivision::edgewise_subdivision;

    fn pt(c: &[(i64, i64)]) -> BPoint {
        BPoint::new(c.iter().map(|&(a, b)| Rational::new(a, b)).collect()).unwrap()
    }

    fn third() -> Rational {
        Rational::new(1, 3)
    }

    fn xstar() -> BPoint {
        pt(&[(5, 18), (1, 9), (11, 18)])
    }

    fn cells_of(pieces: &[CoverPiece]) -> Vec<Cell> {
        pieces.iter().map(|p| p.cell.clone()).collect()
    }

    #[test]
    fn fig1_label3_pieces() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        let pieces = cover.pieces_for(3);
        assert_eq!(
            cells_of(pieces),
            vec![Cell::new(vec![C, E3, E]), Cell::new(vec![D, E, E3])]
        );
        for p in pieces {
            assert_eq!(p.positions, vec![p.cell.position_of(E3).unwrap()]);
        }
    }

    #[test]
    fn fig1_label1_pieces() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        let pieces = cover.pieces_for(1);
        let mut expected = vec![
            Cell::new(vec![E1, A, D]),
            Cell::new(vec![A, D, E]),
            Cell::new(vec![A, B, E]),
            Cell::new(vec![B, C, E]),
            Cell::new(vec![B, E2, C]),
            // d carries label 1 and is a vertex of the completely labeled cell.
            Cell::new(vec![D, E, E3]),
        ];
        expected.sort();
        assert_eq!(cells_of(pieces), expected);
        let first = &pieces[0];
        assert_eq!(first.cell, Cell::new(vec![E1, A, D]));
        assert_eq!(first.positions.len(), 2);
        assert!(cover.empty_labels().is_empty());
    }

    #[test]
    fn trivial_cover_is_threshold_halfspace() {
        let sub = Subdivision::trivial(3);
        let lab = Labeling::new(vec![1, 2, 3]);
        let cover = build_cover(&sub, &lab).unwrap();
        for i in 1..=3 {
            assert_eq!(cover.pieces_for(i).len(), 1);
        }
        let inside = pt(&[(1, 3), (1, 2), (1, 6)]);
        let outside = pt(&[(1, 4), (1, 2), (1, 4)]);
        assert!(member(&cover, &sub, 1, &inside).unwrap().is_member());
        assert!(!member(&cover, &sub, 1, &outside).unwrap().is_member());
    }

    #[test]
    fn member_examples() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();

        let w = member(&cover, &sub, 1, &xstar())
            .unwrap()
            .witness()
            .unwrap();
        assert_eq!(w.cell, fixture::cl_cell());
        assert_eq!(w.vertex, D);
        assert_eq!(w.weight, third());

        let c = sub.point(C).clone();
        assert_eq!(member(&cover, &sub, 1, &c).unwrap(), Membership::NotMember);

        let w = member(&cover, &sub, 2, &c).unwrap().witness().unwrap();
        assert_eq!(w.vertex, C);
        assert_eq!(w.weight, 1);
        // Smallest carrier cell of c is {b, e2, c}.
        assert_eq!(w.cell, Cell::new(vec![B, E2, C]));

        assert!(matches!(
            member(&cover, &sub, 4, &c),
            Err(Error::LabelOutOfRange { label: 4, n: 3 })
        ));
        assert!(member(&cover, &sub, 0, &c).is_err());
    }

    #[test]
    fn boundary_of_threshold_is_included() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        for label in 1..=3 {
            for piece in cover.pieces_for(label) {
                for &p in &piece.positions {
                    for corner in piece_region(&sub, &piece.cell, p, &cover.threshold) {
                        let w = member(&cover, &sub, label, &corner).unwrap().witness();
                        assert!(w.is_some(), "corner {corner:?} of label {label}");
                        assert!(w.unwrap().weight >= third());
                    }
                }
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        assert!(verify_covering_certificate(&cover, &sub, &lab).passed);

        let bad = lab.with_label(D, 2);
        let report = verify_covering_certificate(&cover, &sub, &bad);
        assert!(report.has_kind("labeling-premise"));

        let mut altered = cover.clone();
        altered.threshold = Rational::new(1, 2);
        let report = verify_covering_certificate(&altered, &sub, &lab);
        assert!(!report.passed);
        assert!(report.has_kind("cover-premise"));
        assert!(!report.has_kind("labeling-premise"));
    }

    #[test]
    fn sampled_examples() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();

        let j12 = FaceIndexSet::new(vec![1, 2], 3).unwrap();
        let report = verify_covering_sampled(&cover, &sub, &j12, 6);
        assert!(report.passed);
        assert_eq!(report.checked, 7);

        let half = pt(&[(1, 2), (1, 2), (0, 1)]);
        let w = member(&cover, &sub, 2, &half).unwrap().witness().unwrap();
        assert_eq!(w.cell, Cell::new(vec![A, B, E]));
        assert_eq!(w.vertex, A);
        assert_eq!(w.weight, Rational::new(1, 2));

        let j3 = FaceIndexSet::new(vec![3], 3).unwrap();
        for denom in [1, 5] {
            let report = verify_covering_sampled(&cover, &sub, &j3, denom);
            assert!(report.passed);
            assert_eq!(report.checked, 1);
        }

        let all = FaceIndexSet::new(vec![1, 2, 3], 3).unwrap();
        let report = verify_covering_sampled(&cover, &sub, &all, 9);
        assert!(report.passed);
        assert_eq!(report.checked, 55);

        assert!(!verify_covering_sampled(&cover, &sub, &all, 0).passed);
    }

    #[test]
    fn face_index_set_rules() {
        assert!(FaceIndexSet::new(vec![], 3).is_err());
        assert!(FaceIndexSet::new(vec![4], 3).is_err());
        assert_eq!(
            FaceIndexSet::new(vec![2, 1, 2], 3).unwrap().indices(),
            &[1, 2]
        );
        assert_eq!(FaceIndexSet::all(3).len(), 7);
    }

    #[test]
    fn intersection_point_examples() {
        let (sub, lab) = fixture::fig1();
        let (x, ws) = intersection_point(&sub, &lab).unwrap();
        assert_eq!(x, xstar());
        let verts: Vec<VertexId> = ws.iter().map(|w| w.vertex).collect();
        assert_eq!(verts, vec![D, E, E3]);
        assert!(ws.iter().all(|w| w.weight == third()));

        let sub = Subdivision::trivial(4);
        let (x, _) = intersection_point(&sub, &Labeling::new(vec![1, 2, 3, 4])).unwrap();
        assert_eq!(x.coords(), &vec![Rational::new(1, 4); 4][..]);

        let sub = edgewise_subdivision(2, 2).unwrap();
        let (x, _) = intersection_point(&sub, &Labeling::new(vec![1, 1, 2])).unwrap();
        assert_eq!(x, pt(&[(1, 4), (3, 4)]));
    }

    #[test]
    fn extract_examples() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        assert_eq!(
            extract_cl_simplex(&cover, &sub, &lab, &xstar()).unwrap(),
            fixture::cl_cell()
        );
        let c = sub.point(C).clone();
        assert!(matches!(
            extract_cl_simplex(&cover, &sub, &lab, &c),
            Err(Error::NotInIntersection(1))
        ));

        let sub = Subdivision::trivial(3);
        let lab = Labeling::new(vec![1, 2, 3]);
        let cover = build_cover(&sub, &lab).unwrap();
        let centroid = pt(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(
            extract_cl_simplex(&cover, &sub, &lab, &centroid).unwrap(),
            sub.cells()[0]
        );
    }

    #[test]
    fn naive_check_flags_c() {
        let (sub, lab) = fixture::fig1();
        let report = naive_cover_check(&sub, &lab).unwrap();
        assert_eq!(report.flagged.len(), 1);
        let flag = &report.flagged[0];
        assert_eq!(flag.vertex, C);
        assert_eq!(flag.via[0], Cell::new(vec![B, E2, C]));
        assert_eq!(flag.via[1], Cell::new(vec![B, E2, C]));
        assert_eq!(flag.via[2], Cell::new(vec![C, E3, E]));

        let sub = Subdivision::trivial(3);
        let report = naive_cover_check(&sub, &Labeling::new(vec![1, 2, 3])).unwrap();
        assert!(report.flagged.is_empty());
    }

    #[test]
    fn naive_check_one_dimensional() {
        let sub = edgewise_subdivision(2, 3).unwrap();
        let lab = Labeling::new(vec![1, 1, 2, 2]);
        let report = naive_cover_check(&sub, &lab).unwrap();
        // Brute force: a vertex is flagged iff its carriers jointly show both
        // labels while none of them is completely labeled.
        let mut expected = Vec::new();
        for (id, _) in sub.vertices().iter().enumerate() {
            let carriers: Vec<&Cell> = sub
                .cells()
                .iter()
                .filter(|c| c.contains(VertexId(id)))
                .collect();
            let labels: std::collections::BTreeSet<usize> =
                carriers.iter().flat_map(|c| lab.cell_labels(c)).collect();
            let any_cl = carriers.iter().any(|c| {
                let mut l = lab.cell_labels(c);
                l.sort();
                l == vec![1, 2]
            });
            if labels.len() == 2 && !any_cl {
                expected.push(VertexId(id));
            }
        }
        let got: Vec<VertexId> = report.flagged.iter().map(|f| f.vertex).collect();
        assert_eq!(got, expected);
        assert!(got.is_empty());
    }

    #[test]
    fn smaller_thresholds_also_work() {
        let (sub, lab) = fixture::fig1();
        for t in [
            Rational::new(1, 3),
            Rational::new(1, 4),
            Rational::new(1, 10),
        ] {
            let cover = build_cover_with_threshold(&sub, &lab, t.clone()).unwrap();
            for face in FaceIndexSet::all(3) {
                assert!(verify_covering_sampled(&cover, &sub, &face, 6).passed);
            }
            let x = xstar();
            assert_eq!(
                extract_cl_simplex(&cover, &sub, &lab, &x).unwrap(),
                fixture::cl_cell()
            );
        }
        assert!(build_cover_with_threshold(&sub, &lab, Rational::new(1, 2)).is_err());
        assert!(build_cover_with_threshold(&sub, &lab, Rational::zero()).is_err());
    }

    #[test]
    fn any_label_witness_cell_works() {
        // The proof uses label 1; by symmetry every label's witness cell at x*
        // is completely labeled too.
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        for label in 1..=3 {
            let w = member(&cover, &sub, label, &xstar())
                .unwrap()
                .witness()
                .unwrap();
            assert!(is_completely_labeled(&lab, &w.cell));
        }
    }

    #[test]
    fn naive_member_separates_from_cover() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        let c = sub.point(C).clone();
        for label in 1..=3 {
            assert!(naive_member(&sub, &lab, label, &c).unwrap().is_some());
        }
        assert!(!member(&cover, &sub, 1, &c).unwrap().is_member());
    }

    #[test]
    fn normalize_restores_canonical_order() {
        let (sub, lab) = fixture::fig1();
        let cover = build_cover(&sub, &lab).unwrap();
        let mut shuffled = cover.clone();
        for list in shuffled.pieces.values_mut() {
            list.reverse();
        }
        assert_ne!(shuffled, cover);
        shuffled.normalize();
        assert_eq!(shuffled, cover);
    }
}
