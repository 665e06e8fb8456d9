use thiserror::Error;

/// Errors raised by the exact geometry and stability routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate fan: {0}")]
    DegenerateFan(String),
    #[error("not a Fano configuration: {0}")]
    NotFano(String),
    #[error("infeasible")]
    Infeasible,
    #[error("unbounded")]
    Unbounded,
    #[error("not full-dimensional")]
    NotFullDimensional,
    #[error("zero direction")]
    ZeroDirection,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} exceeds the supported maximum of 8")]
    DimensionTooLarge(usize),
    #[error("insufficient series length: {0}")]
    InsufficientSeries(String),
    #[error("semistable")]
    Semistable,
    #[error("inconsistent M1: {0}")]
    InconsistentM1(String),
    #[error("infeasible slice")]
    InfeasibleSlice,
    #[error("not a face: {0}")]
    NotAFace(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
