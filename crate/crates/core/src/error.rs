use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid surface (g={genus}, r={boundary}): need 2g + r >= 3")]
    InvalidSurface { genus: u32, boundary: u32 },

    #[error("polar coordinates are undefined at the zero vector")]
    ZeroVector,

    #[error("negative or non-finite coordinate {0}")]
    NegativeCoordinate(f64),

    #[error("coordinates sum to {0}, not 1")]
    NotOnSimplex(f64),

    #[error("({0}, {1}) is not a primitive integer vector")]
    NotPrimitive(i64, i64),

    #[error("weight must be positive, got {0}")]
    NonPositiveWeight(String),

    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),

    #[error("multicurve does not fill: all parts are parallel")]
    NotFilling,

    #[error("a k-multicurve needs at least one component")]
    EmptyMulticurve,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cutoff must be positive")]
    NonPositiveCutoff,

    #[error("projected orbit size {projected} exceeds the memory budget of {budget} elements")]
    BudgetExceeded { projected: u64, budget: u64 },

    #[error("linear map is rank deficient; its push-forward is singular")]
    SingularMap,

    #[error("invalid cone measure: {0}")]
    InvalidConeMeasure(String),

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
