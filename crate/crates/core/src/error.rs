use thiserror::Error;

/// Errors produced by graph construction, the walk engines and the analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("invalid graph spec: {0}")]
    Spec(String),

    #[error("{convention} requires a regular graph")]
    IrregularGraph { convention: &'static str },

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("invalid amplitude vector: {0}")]
    InvalidAmplitude(String),

    #[error("at least one factor is required")]
    EmptyFactors,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
