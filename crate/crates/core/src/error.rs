use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the state algebra, optical elements, measurement
/// primitives, and protocol pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coherent amplitude {0}")]
    InvalidAmplitude(Complex64),

    #[error("term index {index} out of range for state with {len} terms")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("state has no terms")]
    EmptyState,

    #[error("state norm^2 {0:e} below numeric floor, cannot normalize")]
    DegenerateState(f64),

    #[error("mode label collision: '{0}'")]
    LabelCollision(String),

    #[error("unknown mode label: '{0}'")]
    UnknownMode(String),

    #[error("mode count mismatch: {0} vs {1}")]
    ModeCountMismatch(usize, usize),

    #[error("post-selection kept no terms (probability {probability})")]
    EmptySelection { probability: f64 },

    #[error("measured mode '{mode}' carries mixed magnitudes {found} vs {expected}")]
    MagnitudeMismatch {
        mode: String,
        expected: f64,
        found: f64,
    },

    #[error("coefficient must be positive, got {0}")]
    NonPositiveCoefficient(f64),

    #[error(
        "Fock truncation tail bound {bound:e} exceeds {limit:e} for |alpha| = {amplitude} at n_max = {n_max}"
    )]
    FockTruncation {
        amplitude: f64,
        n_max: usize,
        bound: f64,
        limit: f64,
    },

    #[error("Fock vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
