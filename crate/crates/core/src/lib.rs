//! Exact simplicial subdivisions of the unit simplex, Sperner labelings,
//! completely labeled cell search, and the KKM cover built from a labeled
//! subdivision, whose common points lead back to completely labeled cells.
//!
//! All geometry is computed with exact rationals; floating point appears only
//! when SVG device coordinates are emitted.

pub mod error;
pub mod fixedpoint;
pub mod fixture;
pub mod geometry;
pub mod io;
pub mod kkm;
pub mod labeling;
mod linalg;
pub mod rational;
pub mod report;
pub mod sperner;
pub mod subdivision;
pub mod svg;

pub use error::{Error, Result};
pub use fixedpoint::{approximate_fixed_point, MapRegistry, SimplexMap, TraceStep};
pub use geometry::{
    affinely_independent, normalized_volume, solve_barycentric, support, BPoint, BarycentricCoords,
    Cell, Location, VertexId,
};
pub use io::{read_instance, write_instance, InstanceDocument};
pub use kkm::{
    build_cover, extract_cl_simplex, intersection_point, member, naive_cover_check,
    verify_covering_certificate, verify_covering_sampled, CoverPiece, FaceIndexSet, KKMCover,
    Membership, Witness,
};
pub use labeling::{labeling_from_map, random_sperner_labeling, validate_labeling, Labeling};
pub use rational::Rational;
pub use report::{CheckMode, ValidationReport, Violation};
pub use sperner::{find_completely_labeled, is_completely_labeled, CLReport};
pub use subdivision::{
    barycentric_refine, edgewise_subdivision, SchemeParams, SchemeRegistry, Subdivision,
    SubdivisionScheme, ValidationMode,
};
pub use svg::{render_svg, SvgOptions};
