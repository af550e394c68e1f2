//! Small dense exact linear algebra: elimination and a two-phase simplex.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::rational::Rational;

pub(crate) type Matrix = Vec<Vec<Rational>>;

/// Forward elimination with partial pivoting on the first nonzero entry.
/// Returns the row-echelon matrix, the pivot columns and the determinant sign
/// flips.
fn echelon(mut m: Matrix) -> (Matrix, Vec<usize>, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut flipped = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            flipped = !flipped;
        }
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *x -= &(&factor * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots, flipped)
}

pub(crate) fn rank(m: Matrix) -> usize {
    echelon(m).1.len()
}

/// Determinant of a square matrix.
pub(crate) fn determinant(m: Matrix) -> Rational {
    let n = m.len();
    let (e, pivots, flipped) = echelon(m);
    if pivots.len() < n {
        return Rational::zero();
    }
    let mut det = Rational::one();
    for (i, row) in e.iter().enumerate() {
        det = det * &row[i];
    }
    if flipped {
        -det
    } else {
        det
    }
}

/// Gauss-Jordan inverse; `None` when singular. Also returns the determinant.
pub(crate) fn inverse(m: &Matrix) -> Option<(Matrix, Rational)> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let mut det = Rational::one();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        if p != c {
            aug.swap(p, c);
            det = -det;
        }
        let pivot = aug[c][c].clone();
        det = det * &pivot;
        let inv = pivot.recip();
        for x in aug[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&factor * y);
            }
        }
    }
    let inv = aug.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((inv, det))
}

pub(crate) fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

struct Tableau {
    rows: Matrix,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for k in 0..=self.width {
            self.rows[r][k] = &self.rows[r][k] * &inv;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for k in 0..=self.width {
                let delta = &factor * &self.rows[r][k];
                self.rows[i][k] -= &delta;
            }
        }
        self.basis[r] = c;
    }

    /// Primal simplex with Bland's rule over columns `< allowed`.
    fn run(&mut self, obj: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational = self
                    .basis
                    .iter()
                    .zip(&self.rows)
                    .map(|(&b, row)| &obj[b] * &row[j])
                    .sum();
                (&obj[j] - reduced).is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }

    fn value(&self, obj: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rows)
            .map(|(&b, row)| &obj[b] * &row[self.width])
            .sum()
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`, exactly.
pub(crate) fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let nv = c.len();
    let width = nv + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|v| if flip { -v } else { v.clone() })
            .collect();
        r.extend((0..m).map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        r.push(if flip { -rhs } else { rhs.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (nv..width).collect(),
        width,
    };

    let mut phase1 = vec![Rational::zero(); width];
    for v in &mut phase1[nv..] {
        *v = Rational::from_integer(-1);
    }
    t.run(&phase1, width);
    if !t.value(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nv {
            match (0..nv).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = c.to_vec();
    phase2.resize(width, Rational::zero());
    if !t.run(&phase2, nv) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal(t.value(&phase2))
}

/// A rational vector written as `nums / scale` with integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Scaled {
    pub nums: Vec<i128>,
    pub scale: i128,
}

/// `v` scaled by the lcm of its denominators; `None` if that leaves `i128`.
/// The scale is positive, so signs of linear forms are preserved.
pub(crate) fn integer_scaled(v: &[Rational]) -> Option<Scaled> {
    let mut l = num_bigint::BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let nums = v
        .iter()
        .map(|x| (x.numer() * (&l / x.denom())).to_i128())
        .collect::<Option<_>>()?;
    Some(Scaled {
        nums,
        scale: l.to_i128()?,
    })
}

/// `a · p` over integers, or `None` on overflow.
pub(crate) fn dot(a: &[i128], p: &[i128]) -> Option<i128> {
    let mut s: i128 = 0;
    for (x, y) in a.iter().zip(p) {
        s = s.checked_add(x.checked_mul(*y)?)?;
    }
    Some(s)
}

/// Sign of `a · p`, or `None` on overflow.
pub(crate) fn dot_sign(a: &[i128], p: &[i128]) -> Option<Ordering> {
    dot(a, p).map(|s| s.cmp(&0))
}

/// `M x` for `M` given by scaled rows, exactly, or `None` on overflow.
pub(crate) fn scaled_mat_vec(rows: &[Scaled], x: &Scaled) -> Option<Vec<Rational>> {
    rows.iter()
        .map(|row| {
            let num = dot(&row.nums, &x.nums)?;
            Some(Rational::from_i128(num, row.scale.checked_mul(x.scale)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|row| row.iter().map(|&v| Rational::from_integer(v)).collect())
            .collect()
    }

    #[test]
    fn determinant_and_inverse_agree() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(a.clone()), Rational::from_integer(18));
        let (inv, det) = inverse(&a).unwrap();
        assert_eq!(det, Rational::from_integer(18));
        let x = vec![r(1, 1), r(2, 1), r(3, 1)];
        let y = mat_vec(&a, &x);
        assert_eq!(mat_vec(&inv, &y), x);
    }

    #[test]
    fn singular_matrix() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(determinant(a.clone()).is_zero());
        assert!(inverse(&a).is_none());
        assert_eq!(rank(a), 1);
    }

    #[test]
    fn swap_changes_sign() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(a), Rational::from_integer(-1));
    }

    #[test]
    fn lp_small_cases() {
        // max x + y, x + 2y = 4, 3x + y = 6  -> x = 8/5, y = 6/5
        let a = vec![vec![r(1, 1), r(2, 1)], vec![r(3, 1), r(1, 1)]];
        let b = vec![r(4, 1), r(6, 1)];
        let c = vec![r(1, 1), r(1, 1)];
        assert_eq!(maximize(&a, &b, &c), LpOutcome::Optimal(r(14, 5)));

        // x - y = -1 with x,y >= 0; maximize x is unbounded.
        let a = vec![vec![r(1, 1), r(-1, 1)]];
        assert_eq!(
            maximize(&a, &[r(-1, 1)], &[r(1, 1), r(0, 1)]),
            LpOutcome::Unbounded
        );

        // x + y = -1 infeasible.
        let a = vec![vec![r(1, 1), r(1, 1)]];
        assert_eq!(
            maximize(&a, &[r(-1, 1)], &[r(1, 1), r(0, 1)]),
            LpOutcome::Infeasible
        );

        // Redundant equality rows.
        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(2, 1), r(2, 1)]];
        let b = vec![r(1, 1), r(2, 1)];
        assert_eq!(
            maximize(&a, &b, &[r(0, 1), r(1, 1)]),
            LpOutcome::Optimal(r(1, 1))
        );
    }

    #[test]
    fn integer_scaling_preserves_signs() {
        let a = vec![
            Rational::new(1, 6),
            Rational::new(-1, 4),
            Rational::new(0, 1),
        ];
        let ai = integer_scaled(&a).unwrap();
        assert_eq!((ai.nums.clone(), ai.scale), (vec![2, -3, 0], 12));
        let p = vec![
            Rational::new(3, 5),
            Rational::new(2, 5),
            Rational::new(7, 3),
        ];
        let pi = integer_scaled(&p).unwrap();
        assert_eq!((pi.nums.clone(), pi.scale), (vec![9, 6, 35], 15));
        // 1/6·3/5 − 1/4·2/5 = 0
        assert_eq!(dot_sign(&ai.nums, &pi.nums), Some(Ordering::Equal));
        assert_eq!(dot_sign(&[i128::MAX, 1], &[2, 1]), None);
    }

    #[test]
    fn scaled_product_matches_rational_product() {
        let a = vec![
            vec![r(1, 2), r(-1, 3), r(2, 1)],
            vec![r(0, 1), r(5, 7), r(-1, 6)],
        ];
        let x = vec![r(1, 4), r(2, 3), r(1, 12)];
        let rows: Vec<Scaled> = a.iter().map(|row| integer_scaled(row).unwrap()).collect();
        let fast = scaled_mat_vec(&rows, &integer_scaled(&x).unwrap()).unwrap();
        assert_eq!(fast, mat_vec(&a, &x));
    }
}
