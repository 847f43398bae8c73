use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("center is not in the universe")]
    CenterNotInUniverse,
    #[error("curve is not in the universe")]
    NotInUniverse,
    #[error("curves do not fill the surface")]
    NotFilling,
    #[error("no admissible curve in the universe: {0}")]
    EmptyUniverse(String),
    #[error("points {0} and {1} are not connected inside the universe")]
    DistanceUnavailable(usize, usize),
    #[error("not a single essential curve")]
    NotACurve,
    #[error(transparent)]
    Curves(#[from] surface_curves::Error),
    #[error(transparent)]
    Track(#[from] train_track::TrackError),
    #[error(transparent)]
    Split(#[from] splitting::SplitError),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
