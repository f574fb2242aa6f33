use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: a circulant system needs n >= 1")]
    EmptyInput,

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error(
        "symmetry violation at ({l}, {mirror}): first_row[{l}] = {left} but first_row[{mirror}] = {right} (|diff| = {diff})"
    )]
    SymmetryViolation {
        l: usize,
        mirror: usize,
        left: f64,
        right: f64,
        diff: f64,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: system has n = {expected}, vector has length {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("spectrum is not symmetric: values[{k}] = {left}, values[{mirror}] = {right}")]
    AsymmetricSpectrum {
        k: usize,
        mirror: usize,
        left: f64,
        right: f64,
    },

    #[error("invalid singular tolerance {0}: must be finite and non-negative")]
    InvalidTolerance(f64),

    #[error("singular system: eigenvalues near zero at k = {}", format_indices(.indices))]
    SingularSystem {
        /// Offending eigenvalue indices.
        indices: Vec<usize>,
        /// `|psi_k|` for each offending index, same order as `indices`.
        magnitudes: Vec<f64>,
    },

    #[error("the constant-RHS path needs a right-hand side with all entries equal")]
    NonConstantRhs,

    #[error("dense matrix of order {n} exceeds the configured cap of {cap}")]
    AllocationLimit { n: usize, cap: usize },

    #[error(
        "numerically singular: pivot {pivot:e} in column {column} is below threshold {threshold:e}"
    )]
    NumericallySingular {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
}

fn format_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
