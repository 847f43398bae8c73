//! Finite truncations of the curve graph and the measurements made on
//! them: distances, images of splitting sequences, quasi-geodesic and
//! thin-triangle constants, short-curve sets and a checker for the
//! path-family criterion for hyperbolicity.

mod ball;
mod error;
mod lsets;
mod phi;
mod prop35;
mod quasi;

pub use ball::{linking_curves, Ball, Distance, UNREACHED};
pub use error::{GraphError, Result};
pub use lsets::{beta_threshold, extend_to_pants, l_set, lemma32_profile, level, triple_center, Profile, Rational, TripleCenter, TOLERANCE};
pub use phi::{joined_image, phi, phi_image, PathInGraph};
pub use prop35::{
    all_pairs, delta_bound, geodesic_family, grid, l_path_family, prop35_check, tree, CriterionInstance, DeltaBound,
    Prop35Report, Violation, EXHAUSTIVE_LIMIT,
};
pub use quasi::{diameter, hausdorff, one_sided, thin_triangle_delta, unparam_qg_constant, QuasiGeodesicFit};
