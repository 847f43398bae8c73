//! The map from tracks to curves, and images of splitting sequences.

use serde::Serialize;
use splitting::SplittingSequence;
use surface_curves::MultiCurve;
use train_track::{vertex_cycles, EmbeddedTrack};

use crate::ball::Ball;
use crate::error::Result;

/// An ordered list of curves; consecutive entries need not be adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathInGraph {
    pub vertices: Vec<MultiCurve>,
}

impl PathInGraph {
    pub fn new(vertices: Vec<MultiCurve>) -> Self {
        let mut out: Vec<MultiCurve> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        PathInGraph { vertices: out }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn reversed(&self) -> Self {
        PathInGraph { vertices: self.vertices.iter().rev().cloned().collect() }
    }

    /// Universe indices of the vertices.
    pub fn indices(&self, ball: &Ball) -> Result<Vec<usize>> {
        self.vertices.iter().map(|v| ball.require(v)).collect()
    }
}

/// The vertex cycle with lexicographically least normal coordinates.
pub fn phi(t: &EmbeddedTrack) -> Result<MultiCurve> {
    let mut best: Option<MultiCurve> = None;
    for v in vertex_cycles(&t.track)? {
        let c = t.measure_to_normal(&v.measure)?;
        if best.as_ref().is_none_or(|b| c.coords < b.coords) {
            best = Some(c);
        }
    }
    Ok(best.expect("a recurrent track has a vertex cycle"))
}

/// Images of all tracks of a sequence, repeats collapsed.
pub fn phi_image(seq: &SplittingSequence) -> Result<PathInGraph> {
    Ok(PathInGraph::new(seq.tracks.iter().map(phi).collect::<Result<_>>()?))
}

/// Path through the splitting graph between the targets of two sequences
/// from the same base: back along the first to the last track they share,
/// then forward along the second. The images of the targets close it off.
pub fn joined_image(to_x: &SplittingSequence, x: &MultiCurve, to_y: &SplittingSequence, y: &MultiCurve) -> Result<PathInGraph> {
    let shared = to_x.moves.iter().zip(&to_y.moves).take_while(|(a, b)| a == b).count();
    let mut vertices = vec![x.clone()];
    for t in to_x.tracks[shared..].iter().rev() {
        vertices.push(phi(t)?);
    }
    for t in &to_y.tracks[shared + 1..] {
        vertices.push(phi(t)?);
    }
    vertices.push(y.clone());
    Ok(PathInGraph::new(vertices))
}
