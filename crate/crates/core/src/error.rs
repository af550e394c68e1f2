use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point is not on the unit simplex: {0}")]
    NotOnSimplex(String),

    #[error("points are affinely dependent")]
    DependentPoints,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid subdivision ({} violation(s))", .0.violations.len())]
    InvalidSubdivision(Box<ValidationReport>),

    #[error("invalid labeling ({} violation(s))", .0.violations.len())]
    InvalidLabeling(Box<ValidationReport>),

    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("point is not in cover set C_{0}")]
    NotInIntersection(usize),

    #[error("map {name} left the simplex: {detail}")]
    MapOffSimplex { name: String, detail: String },

    #[error("unknown {kind} {name:?}; available: {available}")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("unsupported dimension {0}; only n = 3 can be rendered")]
    UnsupportedDimension(usize),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// The attached report, when the error carries one.
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            Error::InvalidSubdivision(r) | Error::InvalidLabeling(r) => Some(r),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
