use thiserror::Error;

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("branch {0} is not large")]
    NotLargeBranch(usize),
    #[error("not a transverse measure: {0}")]
    NotAMeasure(String),
    #[error("no vertex cycle after {0} splits")]
    NoProgress(usize),
    #[error("unsupported: {0}")]
    UnsupportedSurface(String),
    #[error(transparent)]
    Track(#[from] train_track::TrackError),
    #[error(transparent)]
    Curves(#[from] surface_curves::Error),
}

pub type Result<T, E = SplitError> = std::result::Result<T, E>;
