use thiserror::Error;

/// Errors raised by geometry, tensor and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::tensor::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("tensor rank {rank} exceeds the maximum supported rank {max}")]
    RankOverflow { rank: usize, max: usize },

    #[error("operation requires a tensor of rank at least {0}")]
    RankTooSmall(usize),

    #[error("negative index {0} is not allowed")]
    NegativeIndex(i64),

    #[error("point set is degenerate: affine rank {rank} in dimension {dim}")]
    Degenerate { rank: usize, dim: usize },

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("direction must be a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("polarization needs {expected} bodies, got {found}")]
    BodyCount { expected: usize, found: usize },

    #[error("shadows were taken along different directions")]
    MixedDirections,

    #[error("subsphere sampling needs dimension at least 3, got {0}")]
    SubsphereDimension(usize),

    #[error("sampler configuration invalid: {0}")]
    Sampler(String),

    #[error("integrand returned a non-finite value at direction {0:?}")]
    NonFiniteIntegrand(Vec<f64>),

    #[error("polynomial fit residual {residual:e} exceeds {limit:e}")]
    FitResidual { residual: f64, limit: f64 },

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
