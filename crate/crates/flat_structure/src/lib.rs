//! Flat structures of filling pairs of multicurves.

mod complex;
mod error;
pub mod rat;

pub use complex::{
    approx, area, build, cone_angles, q_length_bound, staircase, staircase_length, stretch, Gluing, Rectangle,
    RectangleComplex, Side, Singularity, Staircase,
};
pub use error::{FlatError, Result};
pub use rat::Rational;
