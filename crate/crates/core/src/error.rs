use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("complex is not connected: it contains no spanning hypertree")]
    NotConnected,

    #[error("set is not a hypertree")]
    NotHypertree,

    #[error("set is not a coboundary: it meets the boundary of {0} an odd number of times")]
    NotCoboundary(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("{what} exceeds the guard limit {limit}")]
    GuardExceeded { what: String, limit: usize },

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("column {0} is identically zero")]
    ZeroColumn(usize),

    #[error("factorization residual {residual:e} exceeds tolerance {tolerance:e}")]
    FactorizationResidual { residual: f64, tolerance: f64 },

    #[error("missing geometric provenance: {0}")]
    MissingProvenance(String),
}

impl Error {
    /// Guard violations are reported separately from validation failures.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
