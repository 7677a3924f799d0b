use thiserror::Error;

/// Errors produced by the spherehop library.
#[derive(Error, Debug)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A spectral operator was fed a series expanded in the wrong basis.
    #[error("basis mismatch: operator expects input series at lambda = {expected}, got lambda = {found}")]
    BasisMismatch { expected: f64, found: f64 },

    /// An operator chain has incompatible adjacent basis parameters.
    #[error("operator chain incompatible at step {index}: {reason}")]
    ChainIncompatible { index: usize, reason: String },

    /// A kernel evaluation produced a non-finite value.
    #[error("non-finite kernel value at point pair ({i}, {j}), inner product {argument}")]
    NonFiniteKernel { i: usize, j: usize, argument: f64 },

    /// The symmetric eigensolver failed to produce finite eigenvalues.
    #[error("eigen-decomposition failed: {0}")]
    Eigen(String),

    /// Sphere point sampling could not satisfy the distinctness constraint.
    #[error("point sampling failed: {0}")]
    Sampling(String),

    /// A series value violates its invariants.
    #[error("invalid series: {0}")]
    InvalidSeries(String),
}

pub type Result<T> = std::result::Result<T, Error>;
