use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackError {
    #[error("invalid track: {}", .0.join("; "))]
    InvalidTrack(Vec<String>),
    #[error("track is not recurrent")]
    NotRecurrent,
    #[error("measure is not integral")]
    NonIntegral,
    #[error("not a transverse measure: {0}")]
    NotAMeasure(String),
    #[error("illegal carried path: {0}")]
    IllegalPath(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Curves(#[from] surface_curves::Error),
}

pub type Result<T> = std::result::Result<T, TrackError>;
