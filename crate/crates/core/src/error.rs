use thiserror::Error;

use crate::exactlin::Ring;

/// Everything that can go wrong in the library.
///
/// Internal-consistency failures (two independent computations that must
/// agree but do not) are kept in their own variant so that drivers can map
/// them to a distinct exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring tag mismatch: expected {expected}, found {found}")]
    TagMismatch { expected: Ring, found: Ring },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("scalar {0} does not lie in the requested ring")]
    NotInRing(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate form: gram matrix is singular")]
    DegenerateForm,

    #[error("form symmetry violated: {0}")]
    FormSymmetry(String),

    #[error("wrong form kind: {0}")]
    FormKind(String),

    #[error("not a chain: members {0} and {1} are incomparable")]
    NotAChain(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix does not lie in the ambient algebra: {0}")]
    NotInAmbient(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("no isotropic refinement exists: {0}")]
    NoIsotropicRefinement(String),

    #[error("member {index} is not stable under the conjugation")]
    NotStable { index: usize },

    #[error("unsupported real form: {0}")]
    UnsupportedRealForm(String),

    #[error("level {level} outside system range {lo}..={hi}")]
    LevelOutOfRange { level: usize, lo: usize, hi: usize },

    #[error("undecidable at horizon {horizon}: {reason}")]
    Horizon { horizon: usize, reason: String },

    #[error("coherence violated between levels {0} and {1}")]
    Coherence(usize, usize),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
