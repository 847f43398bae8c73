use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlatError {
    #[error("the curves do not fill the surface")]
    NotFilling,
    #[error("realization has {realized} crossings but the curves meet {expected} times")]
    NotMinimalPosition { realized: u64, expected: u64 },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("expected curves with unit weights")]
    Weighted,
    #[error("curves live on different surfaces")]
    MismatchedSurface,
    #[error("inconsistent complex: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Curves(#[from] surface_curves::Error),
}

pub type Result<T> = std::result::Result<T, FlatError>;
