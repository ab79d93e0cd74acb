use thiserror::Error;

/// Errors raised by the operator-trigonometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("matrix is not square: {rows} rows, row {bad_row} has {cols} entries")]
    NotSquare {
        rows: usize,
        bad_row: usize,
        cols: usize,
    },
    #[error("matrix is empty")]
    Empty,
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is not symmetric: max asymmetry {asymmetry:e} exceeds {allowed:e}")]
    NotSymmetric { asymmetry: f64, allowed: f64 },
    #[error("matrix is not positive definite: smallest eigenvalue {min_eigenvalue:e} <= {threshold:e}")]
    NotPositiveDefinite { min_eigenvalue: f64, threshold: f64 },
    #[error("{routine} did not converge after {iterations} iterations")]
    ConvergenceFailure {
        routine: &'static str,
        iterations: usize,
    },
    #[error("degenerate spectrum (smallest and largest eigenvalues coincide): no vector is turned")]
    DegenerateSpectrum,
    #[error("zero vector has no turning angle")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid option: {0}")]
    InvalidOption(&'static str),
}

impl TrigError {
    /// True for failures of an iterative method rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, TrigError::ConvergenceFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, TrigError>;
