use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface S({genus},{punctures}) is exceptional: 3g-3+m < 2")]
    Exceptional { genus: u32, punctures: u32 },
    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("curves live on different surfaces")]
    MismatchedSurface,
    #[error("input too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("operation `{0}` needs a punctured surface")]
    ClosedSurface(&'static str),
    #[error("model construction failed: {0}")]
    Model(String),
}

pub type Result<T> = std::result::Result<T, Error>;
