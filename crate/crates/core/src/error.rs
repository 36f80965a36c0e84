use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoewnerError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value while evaluating {0}")]
    NonFiniteEvaluation(String),

    #[error("trace self-intersects or leaves the half-plane near point {index}")]
    SelfIntersection { index: usize },

    #[error("consecutive trace points {index} and {} coincide", index + 1)]
    DegenerateStep { index: usize },

    #[error("chord touches the slit R+ near point {index}")]
    SlitCollision { index: usize },

    #[error("curve is not star-shaped about the base point")]
    NotStarShaped,

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("series logarithm failed: derivative vanishes inside the disk")]
    SeriesLogFailure,

    #[error("maps do not describe the same curve (boundary mismatch {mismatch:.3e})")]
    MismatchedCurve { mismatch: f64 },

    #[error("quadrature did not converge: {0}")]
    QuadratureNoConvergence(String),

    #[error("welding map is not monotone near sample {index}")]
    MonotonicityViolation { index: usize },

    #[error("series truncation {available} is smaller than the requested order {requested}")]
    TruncationTooSmall { requested: usize, available: usize },

    #[error("operator norm of the Grunsky matrix is not below one")]
    NormAtLeastOne,

    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("importance sampler recorded no hits for kappa = {kappa}")]
    ZeroHits { kappa: f64 },
}

pub type Result<T> = std::result::Result<T, LoewnerError>;
