use crate::cone::Point;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate in point")]
    NonFinite,

    #[error("interior queries are not supported for {0} cones")]
    InteriorUnsupported(&'static str),

    #[error("operation not supported for this cone representation: {0}")]
    UnsupportedRepresentation(String),

    #[error("seminorm vanishes on a required direction {direction:?}; no normlike-base exists")]
    DegenerateSeminorm { direction: Point },

    #[error("invalid seminorm: {0}")]
    InvalidSeminorm(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("scalarizing function has no finite value")]
    NoFiniteValue,

    #[error("degenerate direction: <y*, k> must be positive")]
    DegenerateDirection,

    #[error("no decomposition f(x) = a + s*k exists over the supplied sets")]
    CoveringViolated,

    #[error("hypothesis failed: {condition}")]
    HypothesisFailed { condition: String, witness: Option<Point> },

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
