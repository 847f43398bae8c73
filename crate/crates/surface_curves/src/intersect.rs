use crate::chart::reference_triangulation;
use crate::curve::MultiCurve;
use crate::error::{Error, Result};
use crate::lifts::linked_pairs;
use crate::realize::realize;

/// Geometric intersection number, bilinear in component weights.
pub fn intersection(alpha: &MultiCurve, beta: &MultiCurve) -> Result<u64> {
    if alpha.surface != beta.surface {
        return Err(Error::MismatchedSurface);
    }
    let tri = reference_triangulation(alpha.surface)?;
    let mut total = 0;
    for (i, a) in alpha.components.iter().enumerate() {
        for (j, b) in beta.components.iter().enumerate() {
            let n = if alpha.surface.is_closed() {
                realize(&alpha.component_curve(i), &beta.component_curve(j))?.crossing_count()
            } else {
                linked_pairs(&tri, &a.word, &b.word)
            };
            total += a.weight * b.weight * n;
        }
    }
    Ok(total)
}

/// Can the two multicurves be realized disjointly?
pub fn disjoint(alpha: &MultiCurve, beta: &MultiCurve) -> Result<bool> {
    Ok(intersection(alpha, beta)? == 0)
}
