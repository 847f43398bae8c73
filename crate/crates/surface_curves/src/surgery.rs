//! Surgery of one curve along arcs of another: curves disjoint from the
//! first that meet the second fewer times.

use crate::curve::MultiCurve;
use crate::error::{Error, Result};
use crate::intersect::intersection;
use crate::realize::{arc_exits, realize};
use crate::words::{canonical_cyclic, reduce_cyclic, reverse_path};

fn single(c: &MultiCurve) -> Result<()> {
    if c.is_simple_curve() {
        Ok(())
    } else {
        Err(Error::InvalidCoordinates("expected a single curve of weight 1".into()))
    }
}

/// Curve of a closed exit word, if the word reduces to the word of an
/// essential simple closed curve.
fn curve_of(alpha: &MultiCurve, word: &[usize]) -> Result<Option<MultiCurve>> {
    let w = reduce_cyclic(word);
    if w.is_empty() {
        return Ok(None);
    }
    let tri = crate::chart::reference_triangulation(alpha.surface)?;
    let c = tri.curve_from_words(&[(w.clone(), 1)])?;
    Ok((c.is_simple_curve() && c.components[0].word == canonical_cyclic(&w)).then_some(c))
}

/// A closed word through a crossing of the two curves, together with the
/// loop of the first curve based at the same crossing.
struct Arc {
    word: Vec<usize>,
    loop_at: Vec<usize>,
}

/// Loops made of an arc of `beta` between consecutive crossings closed up
/// by either arc of `alpha`; with a single crossing, `beta` itself.
fn arcs(alpha: &MultiCurve, beta: &MultiCurve) -> Result<Vec<Arc>> {
    if alpha.surface.is_closed() {
        return Err(Error::ClosedSurface("surgery"));
    }
    single(alpha)?;
    single(beta)?;
    let r = realize(alpha, beta)?;
    let arr = r.arrangement()?;
    let (a_seq, b_seq) = (&arr.alpha_order[0], &arr.beta_order[0]);
    let (a_sides, b_sides) = (r.strand_sides(0, 0), r.strand_sides(1, 0));
    let pos = |seq: &[usize], c: usize| seq.iter().position(|&x| x == c).unwrap();
    let mut out = Vec::new();
    for k in 0..b_seq.len() {
        let (xi, yi) = (b_seq[k], b_seq[(k + 1) % b_seq.len()]);
        let (x, y) = (arr.crossings[xi], arr.crossings[yi]);
        let loop_at = arc_exits(a_sides, x.alpha.chord, x.alpha.chord, true, true);
        let b_wrap = pos(b_seq, yi) <= pos(b_seq, xi);
        let along = arc_exits(b_sides, x.beta.chord, y.beta.chord, true, b_wrap);
        if xi == yi {
            out.push(Arc { word: along, loop_at });
            continue;
        }
        for forward in [true, false] {
            let ahead = (pos(a_seq, xi) > pos(a_seq, yi)) == forward;
            let mut word = along.clone();
            word.extend(arc_exits(a_sides, y.alpha.chord, x.alpha.chord, forward, !ahead));
            out.push(Arc { word, loop_at: loop_at.clone() });
        }
    }
    Ok(out)
}

/// Essential curves disjoint from `alpha` and distinct from it, each an arc
/// of `beta` between consecutive crossings joined to an arc of `alpha`.
pub fn surgery(alpha: &MultiCurve, beta: &MultiCurve) -> Result<Vec<MultiCurve>> {
    let mut out: Vec<MultiCurve> = Vec::new();
    for arc in arcs(alpha, beta)? {
        if let Some(c) = curve_of(alpha, &arc.word)? {
            if c != *alpha && !out.contains(&c) && intersection(&c, alpha)? == 0 {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(out)
}

/// A path from `alpha` to `beta` in which consecutive curves are disjoint.
/// Each step is a surgery lowering the intersection with `beta`; when the
/// only such curve meets the current one once, the boundary of a
/// neighbourhood of the two is inserted between them.
pub fn surgery_path(alpha: &MultiCurve, beta: &MultiCurve) -> Result<Vec<MultiCurve>> {
    single(alpha)?;
    single(beta)?;
    let mut path = vec![alpha.clone()];
    let mut here = intersection(alpha, beta)?;
    while here > 0 {
        let current = path.last().unwrap().clone();
        let mut disjoint: Option<(u64, MultiCurve)> = None;
        let mut once: Option<(u64, MultiCurve, MultiCurve)> = None;
        for arc in arcs(&current, beta)? {
            let Some(c) = curve_of(&current, &arc.word)? else { continue };
            let i = intersection(&c, beta)?;
            if i >= here || c == current {
                continue;
            }
            match intersection(&c, &current)? {
                0 if disjoint.as_ref().is_none_or(|(j, _)| i < *j) => disjoint = Some((i, c)),
                1 if once.as_ref().is_none_or(|(j, _, _)| i < *j) => {
                    let mut w = arc.loop_at.clone();
                    w.extend(&arc.word);
                    w.extend(reverse_path(&arc.loop_at));
                    w.extend(reverse_path(&arc.word));
                    if let Some(g) = curve_of(&current, &w)? {
                        if intersection(&g, &current)? == 0 && intersection(&g, &c)? == 0 {
                            once = Some((i, g, c));
                        }
                    }
                }
                _ => {}
            }
        }
        if let Some((i, c)) = disjoint {
            here = i;
            path.push(c);
        } else if let Some((i, g, c)) = once {
            here = i;
            path.push(g);
            path.push(c);
        } else {
            return Err(Error::Model("surgery did not reduce the intersection".into()));
        }
    }
    if path.last() != Some(beta) {
        path.push(beta.clone());
    }
    Ok(path)
}
