//! The seven-cell labeled subdivision of the 2-simplex with a single
//! completely labeled cell, used as a golden instance throughout.

use crate::geometry::{BPoint, Cell, VertexId};
use crate::labeling::Labeling;
use crate::rational::Rational;
use crate::subdivision::Subdivision;

pub const E1: VertexId = VertexId(0);
pub const E2: VertexId = VertexId(1);
pub const E3: VertexId = VertexId(2);
pub const A: VertexId = VertexId(3);
pub const B: VertexId = VertexId(4);
pub const C: VertexId = VertexId(5);
pub const D: VertexId = VertexId(6);
pub const E: VertexId = VertexId(7);

/// Vertex names in id order.
pub const NAMES: [&str; 8] = ["e1", "e2", "e3", "a", "b", "c", "d", "e"];

fn point(c: [(i64, i64); 3]) -> BPoint {
    BPoint::new(c.iter().map(|&(p, q)| Rational::new(p, q)).collect()).expect("on simplex")
}

pub fn fig1() -> (Subdivision, Labeling) {
    let vertices = vec![
        point([(1, 1), (0, 1), (0, 1)]),
        point([(0, 1), (1, 1), (0, 1)]),
        point([(0, 1), (0, 1), (1, 1)]),
        point([(2, 3), (1, 3), (0, 1)]),
        point([(1, 3), (2, 3), (0, 1)]),
        point([(0, 1), (3, 5), (2, 5)]),
        point([(1, 2), (0, 1), (1, 2)]),
        point([(1, 3), (1, 3), (1, 3)]),
    ];
    let cells = [
        [E1, A, D],
        [A, D, E],
        [A, B, E],
        [B, C, E],
        [B, E2, C],
        [C, E3, E],
        [D, E, E3],
    ]
    .into_iter()
    .map(|c| Cell::new(c.to_vec()))
    .collect();
    let sub = Subdivision::new(3, vertices, cells).expect("fixture is well formed");
    let labeling = Labeling::new(vec![1, 2, 3, 2, 1, 2, 1, 2]);
    (sub, labeling)
}

/// The completely labeled cell `{d, e, e3}`.
pub fn cl_cell() -> Cell {
    Cell::new(vec![D, E, E3])
}
