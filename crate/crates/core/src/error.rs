use thiserror::Error;

use crate::ccs::ValidationReport;
use crate::homology::EssentialityFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid curve system: {0}")]
    Invalid(ValidationReport),
    #[error("label {0} does not occur in the curve system")]
    LabelNotFound(i64),
    #[error("face is not a triangle ({0} borders)")]
    NotATriangle(usize),
    #[error("degenerate hexagon: {0}")]
    DegenerateHexagon(String),
    #[error("curve system is not connected")]
    NotConnected,
    #[error("curve system has genus {0}, expected 1")]
    NotGenus1(i64),
    #[error("homology basis does not reproduce the intersection matrix")]
    BasisOrientation,
    #[error("homology has torsion or unexpected rank {0}")]
    HomologyShape(usize),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("matrix has rank {0}, expected 2")]
    RankNot2(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("curve system is not essential: {0:?}")]
    NotEssential(Vec<EssentialityFailure>),
    #[error("canonical edge data failed the admissibility check (margin {0})")]
    AdmissibilityAssertion(f64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge vector {0} is zero")]
    ZeroEdgeVector(usize),
    #[error("no invertible 2x2 minor in the homology coordinates")]
    NoInvertibleMinor,
    #[error("residual {residual:e} exceeds bound {bound:e}")]
    ResidualExceeded { residual: f64, bound: f64 },
    #[error("real linear map is singular")]
    SingularMap,
    #[error("period lattice is degenerate")]
    DegenerateLattice,
    #[error("endpoints differ outside the kernel of C (residual {residual:e}, bound {bound:e})")]
    KernelConditionViolated { residual: f64, bound: f64 },
    #[error("edge data is not admissible")]
    NotAdmissible,
    #[error("development does not close: {0}")]
    ClosureFailure(String),
    #[error("cone angle {angle} at vertex {vertex} differs from 2π")]
    ConeAngle { vertex: usize, angle: f64 },
    #[error("empty translation range")]
    EmptyRange,
    #[error("index {index} out of range (len {len})")]
    BadIndex { index: usize, len: usize },
    #[error("steps must be at least 1")]
    ZeroSteps,
    #[error("generator gave up: {0}")]
    Generation(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
