//! Pants decompositions and the tracks adapted to them.

use serde::{Deserialize, Serialize};
use surface_curves::{intersection, standard_chart, MultiCurve, Surface};
use train_track::{counting_measure, EmbeddedTrack};

use crate::error::{Result, SplitError};

/// A maximal system of disjoint essential curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsDecomposition {
    pub curves: MultiCurve,
}

impl PantsDecomposition {
    pub fn new(curves: MultiCurve) -> Result<Self> {
        let s = curves.surface;
        if curves.components.len() as i64 != s.complexity() {
            return Err(SplitError::UnsupportedSurface(format!(
                "{} curves, a pants decomposition needs {}",
                curves.components.len(),
                s.complexity()
            )));
        }
        if curves.components.iter().any(|c| c.weight != 1) {
            return Err(SplitError::UnsupportedSurface("pants curves must have weight 1".into()));
        }
        for i in 0..curves.components.len() {
            if intersection(&curves.component_curve(i), &curves.component_curve(i))? != 0 {
                return Err(SplitError::UnsupportedSurface(format!("curve {i} is not simple")));
            }
        }
        Ok(PantsDecomposition { curves })
    }

    /// The decomposition built into the standard track of the surface.
    pub fn standard(surface: Surface) -> Result<Self> {
        let track = EmbeddedTrack::standard(surface)?;
        let cores = &standard_chart(surface)?.0.pants_cores;
        let mut sum = vec![0i128; track.track.branch_count()];
        for core in cores {
            for (x, y) in sum.iter_mut().zip(counting_measure(&track.track, core)?) {
                *x += y;
            }
        }
        Ok(PantsDecomposition { curves: track.measure_to_normal(&sum)? })
    }

    pub fn surface(&self) -> Surface {
        self.curves.surface
    }

    /// The curves one by one.
    pub fn curves(&self) -> Vec<MultiCurve> {
        (0..self.curves.components.len()).map(|i| self.curves.component_curve(i)).collect()
    }
}

/// The track adapted to `p`. Only the decomposition of the standard model is
/// available; any other decomposition is refused.
pub fn adapted_track(p: &PantsDecomposition) -> Result<EmbeddedTrack> {
    let surface = p.surface();
    if *p != PantsDecomposition::standard(surface)? {
        return Err(SplitError::UnsupportedSurface(
            "only the standard pants decomposition has an adapted track".into(),
        ));
    }
    Ok(EmbeddedTrack::standard(surface)?)
}
