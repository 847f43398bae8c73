//! Surfaces of finite type, their reference ideal triangulations, and
//! multicurves in normal coordinates with exact intersection numbers.

mod chart;
mod curve;
mod error;
mod intersect;
mod lifts;
mod model;
mod oracle;
mod realize;
mod surface;
mod surgery;
mod triangulation;
pub mod words;

pub use chart::{derive_chart, reference_triangulation, standard_chart, Chart};
pub use curve::{is_peripheral, Component, CurveFile, MultiCurve, Normalized};
pub use error::{Error, Result};
pub use intersect::{disjoint, intersection};
pub use model::{standard_model, Half, SwitchHalves, TrackModel, Traversal};
pub use oracle::oracle_intersection;
pub use realize::{fills, realize, Arrangement, ChordRef, Corner, Crossing, Realization, Region};
pub use surface::{make_surface, Surface};
pub use surgery::{surgery, surgery_path};
pub use triangulation::Triangulation;
