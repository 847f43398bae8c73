//! Splitting train tracks: single splits with their measure transport,
//! the standard adapted tracks and splitting sequences.

mod adapted;
mod error;
mod sequence;
mod split;

pub use adapted::{adapted_track, PantsDecomposition};
pub use error::{Result, SplitError};
pub use sequence::{
    guided_splitting_sequence, random_splitting_sequence, step_cap, transport, BaseRef, SequenceFile,
    SplittingSequence,
};
pub use split::{admissible_directions, large_branches, lift_measure, split, split_embedded, Direction, Split, Transition};
pub use train_track::EmbeddedTrack;
