use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NonHermitianInput { asymmetry: f64, tolerance: f64 },
    #[error("iteration failed to converge after {iterations} steps")]
    ConvergenceFailure { iterations: usize },
    #[error("matrix is indefinite: smallest eigenvalue {min_eigenvalue:.3e} below -{clip_tol:.3e}")]
    IndefiniteInput { min_eigenvalue: f64, clip_tol: f64 },
    #[error("matrix is numerically singular (condition estimate {condition:.3e})")]
    SingularMatrix { condition: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}
