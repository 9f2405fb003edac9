use thiserror::Error;

/// Why two frames failed the equivalence test.
#[derive(Debug, Clone, PartialEq)]
pub enum EquivalenceFailure {
    /// No linear map sends the n-th vector of one frame to the n-th vector of the other.
    NoLinearMap { residual: f64 },
    /// The unique candidate map exists but is not invertible.
    NotInvertible { ratio: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not invertible (sigma_min/sigma_max = {ratio:e})")]
    NotInvertible { ratio: f64 },

    #[error("sequence is not a frame (lower bound {lower:e}, upper bound {upper:e})")]
    NotAFrame { lower: f64, upper: f64 },

    #[error("frames are not equivalent: {0:?}")]
    NotEquivalent(EquivalenceFailure),

    #[error("symbol entry {index} is zero")]
    ZeroSymbolEntry { index: usize },

    #[error("sequence is not a dual of the reference frame")]
    NotADual,

    #[error("inversion identity does not hold (residual {residual:e} > {tolerance:e})")]
    IdentityDoesNotHold { residual: f64, tolerance: f64 },

    #[error("implication violated: {0}")]
    ImplicationViolated(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("no closed-form metadata for {0} and the horizon trend is inconclusive")]
    MetadataMissing(String),

    #[error("closed-form metadata disagrees with generated prefix: {0}")]
    MetadataInconsistent(String),

    #[error("tail ratio bound not certified: {0}")]
    RatioNotCertified(String),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
