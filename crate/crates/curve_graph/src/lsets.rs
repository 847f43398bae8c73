//! Sets of curves that are short for the flat structure of a pair, the
//! profile of a splitting sequence against them, and centers of triples.

use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use splitting::{PantsDecomposition, SplittingSequence};
use surface_curves::{fills, intersection, MultiCurve};
use train_track::vertex_cycles;

use crate::ball::Ball;
use crate::error::{GraphError, Result};

pub type Rational = Ratio<i128>;

/// `max{a i(g, alpha), i(g, beta) / (a i(alpha, beta))}` from the three
/// intersection numbers.
pub fn level(a: Rational, with_alpha: u64, with_beta: u64, alpha_beta: u64) -> Rational {
    let first = a * Rational::from(with_alpha as i128);
    let second = Rational::from(with_beta as i128) / (a * Rational::from(alpha_beta as i128));
    first.max(second)
}

/// Universe curves of level at most `r` for the pair `(alpha, beta)`.
pub fn l_set(alpha: &MultiCurve, beta: &MultiCurve, a: Rational, r: Rational, ball: &Ball) -> Result<Vec<usize>> {
    if !fills(alpha, beta)? {
        return Err(GraphError::NotFilling);
    }
    let ab = intersection(alpha, beta)?;
    let hits: Vec<Result<Option<usize>>> = (0..ball.len())
        .into_par_iter()
        .map(|g| {
            let c = &ball.universe[g];
            Ok((level(a, intersection(c, alpha)?, intersection(c, beta)?, ab) <= r).then_some(g))
        })
        .collect();
    hits.into_iter().filter_map(|h| h.transpose()).collect()
}

/// Largest `a` for which `beta` lies in `L_a(alpha, beta, r)`: its level
/// is `a i(alpha, beta)`.
pub fn beta_threshold(alpha: &MultiCurve, beta: &MultiCurve, r: Rational) -> Result<Rational> {
    let ab = intersection(alpha, beta)?;
    if ab == 0 {
        return Err(GraphError::NotFilling);
    }
    Ok(r / Rational::from(ab as i128))
}

/// Smallest level at which some track of the sequence, assigned
/// monotonically to `s`, has a vertex cycle in `L_s(target, P, r)` for
/// every `s > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Profile {
    pub r_squared: Rational,
    pub r: f64,
    pub tracks: usize,
}

/// Closed interval `[lo, hi]` of `sigma = s / r`; `hi = None` is unbounded.
#[derive(Clone, Copy, Debug)]
struct Window {
    lo: Rational,
    hi: Option<Rational>,
}

/// Windows of the curves `(A, B)` at level `r^2 = rr`: `s A <= r` and
/// `B / s <= r` read `B / rr <= sigma <= 1 / A`.
fn windows(curves: &[(Rational, Rational)], rr: Rational) -> Vec<Window> {
    let mut w: Vec<Window> = curves
        .iter()
        .filter_map(|&(a, b)| {
            let hi = (!a.is_zero()).then(|| a.recip());
            let lo = if b.is_zero() {
                Rational::zero()
            } else if rr.is_zero() {
                return None;
            } else {
                b / rr
            };
            hi.is_none_or(|h| lo <= h).then_some(Window { lo, hi })
        })
        .collect();
    w.sort_by_key(|x| x.lo);
    // merge into components
    let mut out: Vec<Window> = Vec::new();
    for x in w {
        if let Some(last) = out.last_mut() {
            if last.hi.is_none_or(|h| x.lo <= h) {
                last.hi = match (last.hi, x.hi) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
                continue;
            }
        }
        out.push(x);
    }
    out
}

/// Is there `0 < t_1 <= ... <= t_m` with `(0, t_1]` in track 0's windows,
/// `[t_j, t_{j+1}]` in track j's and `[t_m, oo)` in the last one's?
fn assignable(tracks: &[Vec<(Rational, Rational)>], rr: Rational) -> bool {
    // reachable start points, as closed intervals
    let first = windows(&tracks[0], rr);
    let Some(start) = first.first().filter(|w| w.lo.is_zero()) else { return false };
    let mut reach: Vec<Window> = vec![Window { lo: Rational::zero(), hi: start.hi }];
    for comps in tracks.iter().skip(1).map(|c| windows(c, rr)) {
        let mut next = Vec::new();
        for c in &comps {
            // earliest reachable point inside this component
            let earliest = reach
                .iter()
                .filter(|r| r.hi.is_none_or(|h| c.lo <= h) && c.hi.is_none_or(|h| r.lo <= h))
                .map(|r| r.lo.max(c.lo))
                .min();
            if let Some(lo) = earliest {
                next.push(Window { lo, hi: c.hi });
            }
        }
        if next.is_empty() {
            return false;
        }
        reach = next;
    }
    reach.iter().any(|r| r.hi.is_none())
}

/// The least `r` of the profile of a sequence towards `target`; a sequence
/// without splits has level 0.
pub fn lemma32_profile(seq: &SplittingSequence, target: &MultiCurve, pants: &PantsDecomposition) -> Result<Profile> {
    let tracks = seq.tracks.len();
    if seq.is_empty() {
        return Ok(Profile { r_squared: Rational::zero(), r: 0.0, tracks });
    }
    let tp = intersection(target, &pants.curves)?;
    if tp == 0 {
        return Err(GraphError::NotFilling);
    }
    let per_track: Vec<Vec<(Rational, Rational)>> = seq
        .tracks
        .par_iter()
        .map(|t| {
            vertex_cycles(&t.track)?
                .iter()
                .map(|v| {
                    let c = t.measure_to_normal(&v.measure)?;
                    let a = Rational::from(intersection(&c, target)? as i128);
                    let b = Rational::new(intersection(&c, &pants.curves)? as i128, tp as i128);
                    Ok((a, b))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let all: Vec<&(Rational, Rational)> = per_track.iter().flatten().collect();
    let mut candidates: Vec<Rational> = vec![Rational::zero()];
    for x in &all {
        for y in &all {
            candidates.push(x.0 * y.1);
        }
    }
    candidates.sort();
    candidates.dedup();
    // windows only grow with r, so feasibility is monotone
    let first = candidates.partition_point(|&rr| !assignable(&per_track, rr));
    let Some(&rr) = candidates.get(first) else {
        return Err(GraphError::EmptyUniverse("no level admits a monotone assignment".into()));
    };
    Ok(Profile { r_squared: rr, r: (*rr.numer() as f64 / *rr.denom() as f64).sqrt(), tracks })
}

/// Greedily extends a curve to a pants decomposition with universe curves,
/// in universe order.
pub fn extend_to_pants(curve: &MultiCurve, ball: &Ball) -> Result<PantsDecomposition> {
    let need = curve.surface.complexity() as usize;
    let mut chosen = vec![curve.clone()];
    for c in &ball.universe {
        if chosen.len() == need {
            break;
        }
        let mut ok = true;
        for x in &chosen {
            if x == c || intersection(x, c)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(c.clone());
        }
    }
    if chosen.len() < need {
        return Err(GraphError::EmptyUniverse("cannot complete a pants decomposition".into()));
    }
    let tri = surface_curves::reference_triangulation(curve.surface)?;
    let mut coords = vec![0u64; tri.edge_count()];
    for c in &chosen {
        coords.iter_mut().zip(&c.coords).for_each(|(x, y)| *x += y);
    }
    Ok(PantsDecomposition::new(tri.normalize(&coords)?)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleCenter {
    pub center: usize,
    /// `max{a i(d, P_a), b i(d, P_b), c i(d, P_c)}` at the center.
    pub value: f64,
    pub weights: [f64; 3],
    pub pants_intersections: [u64; 3],
}

pub const TOLERANCE: f64 = 1e-9;

/// Balances weights with `a b i(Pa,Pb) = b c i(Pb,Pc) = a c i(Pc,Pa) = 1`
/// and returns the universe curve of least weighted intersection with the
/// three decompositions.
pub fn triple_center(
    alpha: &MultiCurve,
    beta: &MultiCurve,
    gamma: &MultiCurve,
    pants: [&PantsDecomposition; 3],
    ball: &Ball,
) -> Result<TripleCenter> {
    for (x, y) in [(alpha, beta), (beta, gamma), (gamma, alpha)] {
        if !fills(x, y)? {
            return Err(GraphError::NotFilling);
        }
    }
    if ball.is_empty() {
        return Err(GraphError::EmptyUniverse("empty universe".into()));
    }
    let [pa, pb, pc] = pants.map(|p| &p.curves);
    let x = intersection(pa, pb)? as f64;
    let y = intersection(pb, pc)? as f64;
    let z = intersection(pc, pa)? as f64;
    let a = (y / (x * z)).sqrt();
    let (b, c) = (1.0 / (a * x), 1.0 / (a * z));
    let scores: Vec<Result<f64>> = ball
        .universe
        .par_iter()
        .map(|d| {
            Ok((a * intersection(d, pa)? as f64)
                .max(b * intersection(d, pb)? as f64)
                .max(c * intersection(d, pc)? as f64))
        })
        .collect();
    let mut best = (0usize, f64::INFINITY);
    for (i, s) in scores.into_iter().enumerate() {
        let s = s?;
        if s < best.1 - TOLERANCE {
            best = (i, s);
        }
    }
    Ok(TripleCenter {
        center: best.0,
        value: best.1,
        weights: [a, b, c],
        pants_intersections: [x as u64, y as u64, z as u64],
    })
}
