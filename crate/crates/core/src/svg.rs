//! SVG rendering of labeled subdivisions of the 2-simplex.
//!
//! Corners map to `(0, 0)`, `(W, 0)` and `(W/2, W·√3/2)` in a y-up frame; the
//! frame is flipped and offset by a margin when coordinates are emitted.
//! Geometry stays exact until emission, where every number is printed with
//! six decimals.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{BPoint, VertexId};
use crate::kkm::{build_cover, piece_region};
use crate::labeling::Labeling;
use crate::sperner::is_completely_labeled;
use crate::subdivision::Subdivision;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Edge length of the triangle in device units.
    pub width: f64,
    pub margin: f64,
    /// Shade the pieces of this cover set `C_i`; needs a labeling.
    pub overlay: Option<usize>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 400.0,
            margin: 24.0,
            overlay: None,
        }
    }
}

fn num(v: f64) -> String {
    // Adding zero folds -0.0 into 0.0.
    format!("{:.6}", v + 0.0)
}

struct Frame {
    width: f64,
    height: f64,
    margin: f64,
}

impl Frame {
    fn device(&self, p: &BPoint) -> (f64, f64) {
        let x2 = p.coord(1).to_f64();
        let x3 = p.coord(2).to_f64();
        let x = x2 * self.width + x3 * self.width / 2.0;
        let y = x3 * self.height;
        (self.margin + x, self.margin + self.height - y)
    }

    fn points_attr<'a>(&self, pts: impl IntoIterator<Item = &'a BPoint>) -> String {
        pts.into_iter()
            .map(|p| {
                let (x, y) = self.device(p);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn render_svg(
    sub: &Subdivision,
    labeling: Option<&Labeling>,
    options: &SvgOptions,
) -> Result<String> {
    if sub.n() != 3 {
        return Err(Error::UnsupportedDimension(sub.n()));
    }
    let frame = Frame {
        width: options.width,
        height: options.width * 3f64.sqrt() / 2.0,
        margin: options.margin,
    };
    let total_w = frame.width + 2.0 * frame.margin;
    let total_h = frame.height + 2.0 * frame.margin;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(total_w),
        h = num(total_h)
    )
    .unwrap();

    out.push_str("<g id=\"cells\" stroke=\"none\">\n");
    for (idx, cell) in sub.cells().iter().enumerate() {
        let cl = labeling.is_some_and(|l| is_completely_labeled(l, cell));
        writeln!(
            out,
            "<polygon class=\"{}\" data-cell=\"{idx}\" points=\"{}\" fill=\"{}\"/>",
            if cl { "cell cl" } else { "cell" },
            frame.points_attr(sub.cell_points(cell)),
            if cl { "lightgray" } else { "none" },
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    if let Some(label) = options.overlay {
        let labeling = labeling
            .ok_or_else(|| Error::InvalidArgument("overlay needs a labeled instance".into()))?;
        if label == 0 || label > sub.n() {
            return Err(Error::LabelOutOfRange { label, n: sub.n() });
        }
        let cover = build_cover(sub, labeling)?;
        writeln!(
            out,
            "<g id=\"overlay\" data-label=\"{label}\" fill=\"#99bbff\" fill-opacity=\"0.5\" stroke=\"blue\" stroke-width=\"1.5\">"
        )
        .unwrap();
        for piece in cover.pieces_for(label) {
            let cell_idx = sub.cell_index(&piece.cell).unwrap_or(usize::MAX);
            for &p in &piece.positions {
                let region = piece_region(sub, &piece.cell, p, &cover.threshold);
                writeln!(
                    out,
                    "<polygon class=\"piece\" data-cell=\"{cell_idx}\" data-apex=\"{}\" points=\"{}\"/>",
                    piece.cell.vertices()[p].0,
                    frame.points_attr(&region),
                )
                .unwrap();
            }
        }
        out.push_str("</g>\n");
    }

    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for cell in sub.cells() {
        let v = cell.vertices();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                edges.insert((v[i], v[j]));
            }
        }
    }
    out.push_str("<g id=\"edges\" stroke=\"black\" stroke-width=\"1\">\n");
    for (a, b) in &edges {
        let (x1, y1) = frame.device(sub.point(*a));
        let (x2, y2) = frame.device(sub.point(*b));
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    let corners: Vec<BPoint> = (0..3).map(|i| BPoint::corner(3, i)).collect();
    writeln!(
        out,
        "<polygon id=\"outline\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2.5\"/>",
        frame.points_attr(&corners)
    )
    .unwrap();

    if let Some(labeling) = labeling {
        out.push_str(
            "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\" fill=\"black\">\n",
        );
        for (id, p) in sub.vertices().iter().enumerate() {
            let Some(label) = labeling.get(VertexId(id)) else {
                continue;
            };
            let (x, y) = frame.device(p);
            writeln!(
                out,
                "<text data-vertex=\"{id}\" x=\"{}\" y=\"{}\">{label}</text>",
                num(x + 4.0),
                num(y - 4.0)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(1.0 / 3.0), "0.333333");
    }

    #[test]
    fn corners_land_on_the_frame() {
        let frame = Frame {
            width: 100.0,
            height: 100.0 * 3f64.sqrt() / 2.0,
            margin: 0.0,
        };
        let (x, y) = frame.device(&BPoint::corner(3, 0));
        assert_eq!((x, y), (0.0, frame.height));
        let (x, y) = frame.device(&BPoint::corner(3, 1));
        assert_eq!((x, y), (100.0, frame.height));
        let (x, y) = frame.device(&BPoint::corner(3, 2));
        assert_eq!(x, 50.0);
        assert!(y.abs() < 1e-12);
    }

    #[test]
    fn fig1_render_shades_one_cell() {
        let (sub, lab) = fixture::fig1();
        let svg = render_svg(&sub, Some(&lab), &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("class=\"cell").count(), 7);
        assert_eq!(svg.matches("class=\"cell cl\"").count(), 1);
        let cl_idx = sub.cell_index(&fixture::cl_cell()).unwrap();
        assert!(svg.contains(&format!("class=\"cell cl\" data-cell=\"{cl_idx}\"")));
        assert!(!svg.contains("id=\"overlay\""));
        // 7 triangles with 8 vertices: 14 edges by Euler's formula.
        assert_eq!(svg.matches("<line ").count(), 14);
    }

    #[test]
    fn overlay_for_label_one() {
        let (sub, lab) = fixture::fig1();
        let opts = SvgOptions {
            overlay: Some(1),
            ..SvgOptions::default()
        };
        let svg = render_svg(&sub, Some(&lab), &opts).unwrap();
        // e1 and d in {e1,a,d}; d in {a,d,e} and {d,e,e3}; b in three cells.
        assert_eq!(svg.matches("class=\"piece\"").count(), 7);
        for apex in [fixture::E1, fixture::D, fixture::B] {
            assert!(svg.contains(&format!("data-apex=\"{}\"", apex.0)));
        }
    }

    #[test]
    fn trivial_subdivision_is_one_shaded_triangle() {
        let sub = Subdivision::trivial(3);
        let lab = Labeling::new(vec![1, 2, 3]);
        let svg = render_svg(&sub, Some(&lab), &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("class=\"cell cl\"").count(), 1);
        assert_eq!(svg.matches("class=\"cell").count(), 1);
    }

    #[test]
    fn other_dimensions_are_rejected() {
        let sub = Subdivision::trivial(4);
        assert!(matches!(
            render_svg(&sub, None, &SvgOptions::default()),
            Err(Error::UnsupportedDimension(4))
        ));
    }
}
