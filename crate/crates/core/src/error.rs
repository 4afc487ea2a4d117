use thiserror::Error;

/// Errors raised by the algebraic and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MzvError {
    #[error("word `{0}` is not in H^1 (empty or ends with x)")]
    WordNotInH1(String),
    #[error("unsupported regularized shape {0}")]
    UnsupportedShape(String),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("depth mismatch: index has depth {index}, arguments have depth {args}")]
    DepthMismatch { index: usize, args: usize },
    #[error("divergent index {0}: use the regularized symbol instead")]
    DivergentIndex(String),
    #[error("weight {weight} too small (need at least {min})")]
    WeightTooSmall { weight: u32, min: u32 },
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("internal division error: nonzero remainder dividing by {0}")]
    InternalDivisionError(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MzvError>;
