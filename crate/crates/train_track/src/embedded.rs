use std::sync::Arc;

use serde::{Deserialize, Serialize};
use surface_curves::words::{reduce_cyclic, reverse_path};
use surface_curves::{standard_chart, MultiCurve, Surface, Traversal, Triangulation};

use crate::carried::measure_to_multicurve;
use crate::error::Result;
use crate::track::TrainTrack;

/// A track drawn on the reference triangulation: every branch has a path
/// in the dual spine from the triangle of its end-0 switch to that of its
/// end-1 switch, written as exited triangle sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedTrack {
    pub track: TrainTrack,
    pub paths: Vec<Vec<usize>>,
    pub triangulation: Arc<Triangulation>,
}

/// Serializable part of an embedded track.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedTrackFile {
    #[serde(flatten)]
    pub track: TrainTrack,
    pub paths: Vec<Vec<usize>>,
}

impl EmbeddedTrack {
    /// The standard track of a surface, drawn on its reference triangulation.
    pub fn standard(surface: Surface) -> Result<Self> {
        let entry = standard_chart(surface)?;
        let (model, chart) = (&entry.0, &entry.1);
        let track =
            TrainTrack::with_punctures(surface, model.switches.clone(), model.branch_count, &model.puncture_halves);
        Ok(EmbeddedTrack { track, paths: chart.branch_paths.clone(), triangulation: Arc::clone(&chart.triangulation) })
    }

    /// Spine path of a carried closed word, cyclically reduced.
    pub fn word_path(&self, word: &[Traversal]) -> Vec<usize> {
        let mut path = Vec::new();
        for t in word {
            if t.forward {
                path.extend_from_slice(&self.paths[t.branch]);
            } else {
                path.extend(reverse_path(&self.paths[t.branch]));
            }
        }
        reduce_cyclic(&path)
    }

    /// Normal coordinates of the curve carried with measure `mu`.
    pub fn measure_to_normal(&self, mu: &[i128]) -> Result<MultiCurve> {
        let carried = measure_to_multicurve(&self.track, mu)?;
        let mut coords = vec![0u64; self.triangulation.edge_count()];
        for (word, mult) in &carried.components {
            for s in self.word_path(word) {
                coords[s / 2] += mult;
            }
        }
        Ok(self.triangulation.normalize(&coords)?)
    }

    pub fn to_file(&self) -> EmbeddedTrackFile {
        EmbeddedTrackFile { track: self.track.clone(), paths: self.paths.clone() }
    }
}
