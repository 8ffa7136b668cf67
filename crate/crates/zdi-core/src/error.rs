//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the numeric kernels and index computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZdiError {
    /// Matrix construction rejected: zero dimension or shape mismatch.
    #[error("invalid dimension: expected {expected}, got {got}")]
    InvalidDimension { expected: usize, got: usize },

    /// Matrix construction rejected: NaN or infinite entry.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// Input is not Hermitian within the working tolerance.
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// Input fails the commutator test for normality.
    #[error("matrix is not normal (relative commutator norm {deviation:.3e})")]
    NotNormal { deviation: f64 },

    /// Iterative eigensolver exhausted its sweep budget.
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// The count-minimization and eigenvalue-minima routes disagree on d(A);
    /// signals a grid or tolerance misconfiguration.
    #[error("inconsistent formulations: count route gives d={d_count}, lambda route gives d={d_lambda}")]
    InconsistentFormulations { d_count: usize, d_lambda: usize },

    /// Some row or column has more than one nonzero entry.
    #[error("not a weighted permutation matrix: row {row} or column {col} has multiple nonzero entries")]
    NotWeightedPermutation { row: usize, col: usize },

    /// A nonzero diagonal entry forms a 1-cycle, which the cycle/path forms exclude.
    #[error("unsupported 1-cycle: nonzero diagonal entry at index {index}")]
    OneCycle { index: usize },

    /// The cubic has a z-free part too large to factor out.
    #[error("cubic is not divisible by z (largest z-free coefficient {max_coeff:.3e})")]
    NotDivisible { max_coeff: f64 },

    /// Boundary analysis requested but 0 is not on the boundary of W(A).
    #[error("0 is not a boundary point of the numerical range ({reason})")]
    NotOnBoundary { reason: &'static str },

    /// Isometry candidate has incompatible shape.
    #[error("dimension mismatch: matrix is {n}x{n}, candidate is {rows}x{cols}")]
    DimensionMismatch { n: usize, rows: usize, cols: usize },

    /// Multi-start isotropic search exhausted its restarts without a verified certificate.
    #[error("search failed: best zero-compression residual {best_residual:.3e} over {restarts} restarts")]
    SearchFailed { best_residual: f64, restarts: usize },

    /// A theorem-guaranteed bound failed numerically; upstream results are suspect.
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ZdiError>;
