//! Generic train tracks on surfaces of finite type: structure checks, the
//! cone of transverse measures, vertex cycles and carried curves.

mod carried;
mod cone;
mod embedded;
mod error;
mod track;
mod validate;

pub use carried::{canonical_word, counting_measure, integral_measure, measure_to_multicurve, CarriedCurve};
pub use cone::{cone_dimension, extreme_rays, extreme_rays_by_supports, is_extreme, is_recurrent, vertex_cycles, VertexCycle};
pub use embedded::{EmbeddedTrack, EmbeddedTrackFile};
pub use error::{Result, TrackError};
pub use track::{RegionInfo, TrainTrack};
pub use validate::{validate_track, Diagnostics};
