use thiserror::Error;

use crate::gpe::ValidationReport;
use crate::join::JoinLevel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("polygon needs at least 3 non-collinear vertices")]
    Degenerate,
    #[error("vertex sequence is not strictly convex")]
    NotConvex,
    #[error("affine map is not invertible (zero determinant)")]
    Singular,
    #[error("segment endpoints coincide")]
    ZeroLengthSegment,
}

#[derive(Debug, Error)]
pub enum GpeError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("invalid polygon exchange:\n{0}")]
    Invalid(ValidationReport),
    #[error("point lies outside the space X")]
    OutsideSpace,
    #[error("piece {0} has a non-orthogonal linear part")]
    NotOrthogonal(usize),
    #[error("{0} pieces given for {1} atoms")]
    PieceCount(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A resource limit that stopped a join computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    Cells(usize),
    Bits(u64),
}

impl std::fmt::Display for Cap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cap::Cells(k) => write!(f, "cell cap {k}"),
            Cap::Bits(b) => write!(f, "coordinate bit-length cap {b}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum JoinError {
    #[error("resource cap hit ({cap}) while computing level {attempted}; {} levels completed", completed.len())]
    CapExceeded {
        cap: Cap,
        attempted: usize,
        completed: Vec<JoinLevel>,
    },
    #[error("join sequence needs at least one level")]
    EmptyRequest,
}

#[derive(Debug, Error)]
pub enum EntropyError {
    #[error("growth series has {0} values, need at least {1}")]
    SeriesTooShort(usize, usize),
    #[error("growth series value {0} at index {1} is not positive")]
    NonPositive(f64, usize),
    #[error("orbit hit the singular set at step {0}")]
    SingularHit(usize),
    #[error("empty sample of regular points")]
    EmptySample,
    #[error(transparent)]
    Join(#[from] JoinError),
    #[error(transparent)]
    Gpe(#[from] GpeError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BilliardError {
    #[error("table needs at least 3 vertices")]
    TooFewVertices,
    #[error("table vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("table boundary is not simple (sides {0} and {1} meet)")]
    NotSimple(usize, usize),
    #[error("consecutive table sides at vertex {0} are collinear")]
    CollinearVertex(usize),
    #[error("operation requires a convex table")]
    NonConvex,
    #[error("phase point (s={s}, theta={theta}) is malformed")]
    Malformed { s: f64, theta: f64 },
    #[error("ray from phase point found no boundary intersection")]
    NoHit,
    #[error("enumeration budget of {0} nodes exceeded")]
    Budget(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
