//! Points of the unit simplex, cells, and exact barycentric linear algebra.
//!
//! Every point is stored by its ambient coordinates, which sum to one. On the
//! unit simplex those coordinates are at the same time the barycentric weights
//! with respect to the corners `e_1..e_n`, so no second representation exists.
//! Because every point has coordinate sum one, affine independence of points
//! coincides with linear independence of their coordinate vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;

/// A point of the unit simplex: nonnegative coordinates summing to exactly 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BPoint(Vec<Rational>);

impl BPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::NotOnSimplex("empty coordinate vector".into()));
        }
        if let Some(c) = coords.iter().find(|c| c.is_negative()) {
            return Err(Error::NotOnSimplex(format!("negative coordinate {c}")));
        }
        let sum: Rational = coords.iter().sum();
        if sum != 1 {
            return Err(Error::NotOnSimplex(format!("coordinates sum to {sum}")));
        }
        Ok(BPoint(coords))
    }

    /// The corner `e_i` of the n-dimensional simplex, `i` zero-based.
    pub fn corner(n: usize, i: usize) -> Self {
        assert!(i < n, "corner index out of range");
        BPoint(
            (0..n)
                .map(|k| {
                    if k == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    /// Uniform average of a nonempty set of points of equal dimension.
    pub fn barycenter<'a>(points: impl IntoIterator<Item = &'a BPoint>) -> Result<Self> {
        let points: Vec<&BPoint> = points.into_iter().collect();
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidArgument("barycenter of no points".into()))?;
        let n = first.dim();
        check_dims(points.iter().copied(), n)?;
        let k = Rational::from_integer(points.len() as i64);
        let coords = (0..n)
            .map(|i| points.iter().map(|p| &p.0[i]).sum::<Rational>() / &k)
            .collect();
        Ok(BPoint(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    /// Max-norm distance to another point.
    pub fn max_dist(&self, other: &BPoint) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl<'de> Deserialize<'de> for BPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<Rational>::deserialize(d)?;
        BPoint::new(coords).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for BPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Index into one subdivision's vertex table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

/// A cell of a subdivision, stored as ascending vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cell(Vec<VertexId>);

impl Cell {
    /// Sorts the ids into canonical order. Repeated ids are kept so that
    /// validation can report them.
    pub fn new(mut ids: Vec<VertexId>) -> Self {
        ids.sort();
        Cell(ids)
    }

    pub fn from_indices(ids: impl IntoIterator<Item = usize>) -> Self {
        Cell::new(ids.into_iter().map(VertexId).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position_of(&self, v: VertexId) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.position_of(v).is_some()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|v| v.0).collect()
    }
}

/// Weights of a point with respect to the vertices of a cell, in cell order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BarycentricCoords(Vec<Rational>);

impl BarycentricCoords {
    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    pub fn weight(&self, position: usize) -> &Rational {
        &self.0[position]
    }

    /// `Σ λ_i a_i` over the given cell points.
    pub fn recombine(&self, points: &[&BPoint]) -> Vec<Rational> {
        let n = points.first().map_or(0, |p| p.dim());
        (0..n)
            .map(|k| self.0.iter().zip(points).map(|(w, p)| w * p.coord(k)).sum())
            .collect()
    }
}

/// Result of locating a point relative to one cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Location {
    Inside(BarycentricCoords),
    Outside,
}

impl Location {
    pub fn inside(self) -> Option<BarycentricCoords> {
        match self {
            Location::Inside(c) => Some(c),
            Location::Outside => None,
        }
    }
}

fn check_dims<'a>(points: impl IntoIterator<Item = &'a BPoint>, n: usize) -> Result<()> {
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// Matrix whose columns are the given points.
pub(crate) fn column_matrix(points: &[&BPoint]) -> Matrix {
    let n = points.first().map_or(0, |p| p.dim());
    (0..n)
        .map(|k| points.iter().map(|p| p.coord(k).clone()).collect())
        .collect()
}

fn check_cell_shape(points: &[&BPoint]) -> Result<usize> {
    let n = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty point list".into()))?
        .dim();
    check_dims(points.iter().copied(), n)?;
    if points.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: points.len(),
        });
    }
    Ok(n)
}

pub fn affinely_independent(points: &[&BPoint]) -> Result<bool> {
    let n = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty point list".into()))?
        .dim();
    check_dims(points.iter().copied(), n)?;
    if points.len() > n {
        return Err(Error::InvalidArgument(format!(
            "{} points cannot be affinely independent in dimension {n}",
            points.len()
        )));
    }
    let rows: Matrix = points.iter().map(|p| p.coords().to_vec()).collect();
    Ok(linalg::rank(rows) == points.len())
}

/// Unique weights of `x` with respect to the cell, or `Outside` when some
/// weight of the affine solution is negative.
pub fn solve_barycentric(cell_points: &[&BPoint], x: &BPoint) -> Result<Location> {
    let n = check_cell_shape(cell_points)?;
    check_dims([x], n)?;
    let (inv, _) = linalg::inverse(&column_matrix(cell_points)).ok_or(Error::DependentPoints)?;
    Ok(classify(linalg::mat_vec(&inv, x.coords())))
}

pub(crate) fn classify(weights: Vec<Rational>) -> Location {
    if weights.iter().any(Rational::is_negative) {
        Location::Outside
    } else {
        Location::Inside(BarycentricCoords(weights))
    }
}

/// Absolute determinant of the matrix with the points as columns. Equals 1 for
/// the whole simplex and 0 exactly for dependent points.
pub fn normalized_volume(cell_points: &[&BPoint]) -> Result<Rational> {
    check_cell_shape(cell_points)?;
    Ok(linalg::determinant(column_matrix(cell_points)).abs())
}

/// One-based indices of the positive coordinates of `x`.
pub fn support(x: &BPoint) -> Vec<usize> {
    x.coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_positive())
        .map(|(i, _)| i + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[(i64, i64)]) -> BPoint {
        BPoint::new(c.iter().map(|&(a, b)| Rational::new(a, b)).collect()).unwrap()
    }

    fn e(i: usize) -> BPoint {
        BPoint::corner(3, i - 1)
    }

    fn fig_d() -> BPoint {
        p(&[(1, 2), (0, 1), (1, 2)])
    }
    fn fig_e() -> BPoint {
        p(&[(1, 3), (1, 3), (1, 3)])
    }
    fn fig_a() -> BPoint {
        p(&[(2, 3), (1, 3), (0, 1)])
    }
    fn fig_c() -> BPoint {
        p(&[(0, 1), (3, 5), (2, 5)])
    }

    /// Cofactor expansion; independent of the elimination code.
    fn det3(m: [[Rational; 3]; 3]) -> Rational {
        let minor = |a: &Rational, b: &Rational, c: &Rational, d: &Rational| a * d - b * c;
        &m[0][0] * minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2])
            - &m[0][1] * minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2])
            + &m[0][2] * minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1])
    }

    fn oracle_volume(pts: [&BPoint; 3]) -> Rational {
        let m = [0, 1, 2].map(|k| [0, 1, 2].map(|i| pts[i].coord(k).clone()));
        det3(m).abs()
    }

    #[test]
    fn rejects_points_off_the_simplex() {
        assert!(BPoint::new(vec![Rational::new(1, 2), Rational::new(1, 3)]).is_err());
        assert!(BPoint::new(vec![Rational::new(3, 2), Rational::new(-1, 2)]).is_err());
        assert!(BPoint::new(vec![]).is_err());
    }

    #[test]
    fn independence_examples() {
        assert!(affinely_independent(&[&e(1), &e(2), &e(3)]).unwrap());
        let mid = p(&[(1, 2), (1, 2), (0, 1)]);
        assert!(!affinely_independent(&[&e(1), &e(2), &mid]).unwrap());
        assert!(affinely_independent(&[&fig_d(), &fig_e(), &e(3)]).unwrap());
        assert_eq!(
            oracle_volume([&fig_d(), &fig_e(), &e(3)]),
            Rational::new(1, 6)
        );
        assert!(affinely_independent(&[&e(2)]).unwrap());
    }

    #[test]
    fn independence_errors() {
        let short = BPoint::corner(2, 0);
        assert!(matches!(
            affinely_independent(&[&e(1), &short]),
            Err(Error::DimensionMismatch { .. })
        ));
        let four = [&e(1), &e(2), &e(3), &e(1)];
        assert!(affinely_independent(&four).is_err());
    }

    #[test]
    fn solve_examples() {
        let x = p(&[(5, 18), (1, 9), (11, 18)]);
        let w = solve_barycentric(&[&fig_d(), &fig_e(), &e(3)], &x)
            .unwrap()
            .inside()
            .unwrap();
        assert_eq!(w.weights(), &vec![Rational::new(1, 3); 3][..]);

        let w = solve_barycentric(&[&e(1), &e(2), &e(3)], &fig_d())
            .unwrap()
            .inside()
            .unwrap();
        assert_eq!(
            w.weights(),
            &[Rational::new(1, 2), Rational::zero(), Rational::new(1, 2)]
        );

        assert_eq!(
            solve_barycentric(&[&e(1), &fig_a(), &fig_d()], &x).unwrap(),
            Location::Outside
        );
    }

    #[test]
    fn solve_rejects_dependent_cells() {
        let mid = p(&[(1, 2), (1, 2), (0, 1)]);
        assert!(matches!(
            solve_barycentric(&[&e(1), &e(2), &mid], &e(1)),
            Err(Error::DependentPoints)
        ));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(normalized_volume(&[&e(1), &e(2), &e(3)]).unwrap(), 1);
        let v = normalized_volume(&[&e(1), &fig_a(), &fig_d()]).unwrap();
        assert_eq!(v, Rational::new(1, 6));
        assert_eq!(v, oracle_volume([&e(1), &fig_a(), &fig_d()]));
        let v = normalized_volume(&[&fig_c(), &e(3), &fig_e()]).unwrap();
        assert_eq!(v, Rational::new(1, 5));
        assert_eq!(v, oracle_volume([&fig_c(), &e(3), &fig_e()]));
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&fig_d()), vec![1, 3]);
        assert_eq!(support(&e(2)), vec![2]);
        assert_eq!(support(&fig_e()), vec![1, 2, 3]);
    }

    /// Random point of the 3-simplex with denominator `d`.
    fn grid_point() -> impl Strategy<Value = BPoint> {
        (1i64..12).prop_flat_map(|d| {
            (0..=d).prop_flat_map(move |a| {
                (0..=d - a).prop_map(move |b| p(&[(a, d), (b, d), (d - a - b, d)]))
            })
        })
    }

    proptest! {
        #[test]
        fn recombination_is_exact(
            a in grid_point(), b in grid_point(), c in grid_point(),
            w in (1i64..20, 1i64..20, 1i64..20)
        ) {
            prop_assume!(affinely_independent(&[&a, &b, &c]).unwrap());
            let total = w.0 + w.1 + w.2;
            let lam = [Rational::new(w.0, total), Rational::new(w.1, total), Rational::new(w.2, total)];
            let x: Vec<Rational> = (0..3)
                .map(|k| &lam[0] * a.coord(k) + &lam[1] * b.coord(k) + &lam[2] * c.coord(k))
                .collect();
            let x = BPoint::new(x).unwrap();
            let got = solve_barycentric(&[&a, &b, &c], &x).unwrap().inside().unwrap();
            prop_assert_eq!(got.weights(), &lam[..]);
            prop_assert_eq!(got.recombine(&[&a, &b, &c]), x.coords().to_vec());
            // Pigeonhole: some weight is at least 1/n.
            prop_assert!(got.weights().iter().any(|w| *w >= Rational::new(1, 3)));

            // Permuting the cell permutes the weights.
            let perm = solve_barycentric(&[&c, &a, &b], &x).unwrap().inside().unwrap();
            prop_assert_eq!(perm.weights(), &[lam[2].clone(), lam[0].clone(), lam[1].clone()][..]);

            // A zero coordinate of x forces that coordinate to vanish on every
            // vertex with positive weight.
            for k in 0..3 {
                if x.coord(k).is_zero() {
                    for (wi, pt) in got.weights().iter().zip([&a, &b, &c]) {
                        if wi.is_positive() {
                            prop_assert!(pt.coord(k).is_zero());
                        }
                    }
                }
            }
        }

        #[test]
        fn volume_is_permutation_invariant(a in grid_point(), b in grid_point(), c in grid_point()) {
            let v = normalized_volume(&[&a, &b, &c]).unwrap();
            prop_assert_eq!(&v, &normalized_volume(&[&b, &c, &a]).unwrap());
            prop_assert_eq!(&v, &normalized_volume(&[&b, &a, &c]).unwrap());
            prop_assert_eq!(&v, &oracle_volume([&a, &b, &c]));
            prop_assert_eq!(v.is_zero(), !affinely_independent(&[&a, &b, &c]).unwrap());
        }
    }
}
