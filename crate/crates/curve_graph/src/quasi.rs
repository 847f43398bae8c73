//! Quasi-geodesic constants, thin triangles and Hausdorff distances of
//! vertex paths, measured in a ball.

use num_rational::Ratio;
use serde::Serialize;

use crate::ball::Ball;
use crate::error::Result;
use crate::phi::PathInGraph;

fn distances(ball: &Ball, idx: &[usize]) -> Result<Vec<Vec<u32>>> {
    idx.iter().map(|&i| idx.iter().map(|&j| ball.checked_distance(i, j)).collect()).collect()
}

/// Difference constraints `x[v] - x[u] <= w`: feasible iff no negative
/// cycle.
fn feasible<T>(n: usize, edges: &[(usize, usize, T)]) -> bool
where
    T: Copy + PartialOrd + std::ops::Add<Output = T> + Default,
{
    let mut x = vec![T::default(); n];
    for _ in 0..=n {
        let mut changed = false;
        for &(u, v, w) in edges {
            let cand = x[u] + w;
            if cand < x[v] {
                x[v] = cand;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

/// Constraints on the breakpoints `s_0 <= ... <= s_{m+1}` of a monotone
/// reparametrization; vertex `k` occupies `[s_k, s_{k+1})`. Weights are
/// produced by `w(lower, upper)` from the bounds `d/p - p` and `p d + p`.
fn constraints<T: Copy>(d: &[Vec<u32>], zero: T, piece: T, bounds: impl Fn(u32) -> (T, T), neg: impl Fn(T) -> T) -> Vec<(usize, usize, T)> {
    let m = d.len();
    let mut e = Vec::new();
    for k in 0..m {
        e.push((k + 1, k, zero));
        e.push((k, k + 1, piece));
        for l in k + 1..m {
            let (lo, hi) = bounds(d[k][l]);
            e.push((k, l + 1, hi));
            e.push((l, k + 1, neg(lo)));
        }
    }
    e
}

fn feasible_float(d: &[Vec<u32>], p: f64) -> bool {
    let e = constraints(d, 0.0, p, |x| (x as f64 / p - p, p * x as f64 + p), |x| -x);
    feasible(d.len() + 1, &e)
}

/// Exact check at `p = num / 2^k`, everything scaled by `num * 2^k`.
fn feasible_exact(d: &[Vec<u32>], num: i128, k: u32) -> bool {
    let four_k = 1i128 << (2 * k);
    let sq = num * num;
    let e = constraints(d, 0i128, sq, |x| (x as i128 * four_k - sq, sq * (x as i128 + 1)), |x| -x);
    feasible(d.len() + 1, &e)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiGeodesicFit {
    /// Least p up to the bisection tolerance, with an exact certificate.
    pub p: f64,
    pub certified: Ratio<i128>,
    pub vertices: usize,
}

const SCALE_BITS: u32 = 24;

/// Least `p >= 1` for which the path is an unparametrized
/// p-quasi-geodesic in the ball metric.
pub fn unparam_qg_constant(path: &PathInGraph, ball: &Ball) -> Result<QuasiGeodesicFit> {
    let d = distances(ball, &path.indices(ball)?)?;
    let vertices = d.len();
    let exact = |p: f64| {
        let num = (p * (1u64 << SCALE_BITS) as f64).ceil() as i128;
        (feasible_exact(&d, num, SCALE_BITS), Ratio::new(num, 1i128 << SCALE_BITS))
    };
    if let (true, one) = exact(1.0) {
        return Ok(QuasiGeodesicFit { p: 1.0, certified: one, vertices });
    }
    let dmax = d.iter().flatten().copied().max().unwrap_or(0) as f64;
    let (mut lo, mut hi) = (1.0f64, (vertices as f64 + 2.0).max(dmax.sqrt() + 2.0));
    while !feasible_float(&d, hi) {
        hi *= 2.0;
    }
    while hi - lo > 1e-7 * hi {
        let mid = 0.5 * (lo + hi);
        if feasible_float(&d, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    loop {
        if let (true, certified) = exact(hi) {
            return Ok(QuasiGeodesicFit { p: hi, certified, vertices });
        }
        hi *= 1.0 + 1e-6;
    }
}

fn set_distance(ball: &Ball, v: usize, set: &[usize]) -> Result<u32> {
    set.iter().map(|&w| ball.checked_distance(v, w)).try_fold(u32::MAX, |m, d| Ok(m.min(d?)))
}

/// Largest distance from a vertex of `a` to the set `b`.
pub fn one_sided(ball: &Ball, a: &[usize], b: &[usize]) -> Result<u32> {
    a.iter().map(|&v| set_distance(ball, v, b)).try_fold(0, |m, d| Ok(m.max(d?)))
}

pub fn hausdorff(a: &PathInGraph, b: &PathInGraph, ball: &Ball) -> Result<u32> {
    let (a, b) = (a.indices(ball)?, b.indices(ball)?);
    Ok(one_sided(ball, &a, &b)?.max(one_sided(ball, &b, &a)?))
}

pub fn diameter(set: &[usize], ball: &Ball) -> Result<u32> {
    let mut best = 0;
    for &i in set {
        for &j in set {
            best = best.max(ball.checked_distance(i, j)?);
        }
    }
    Ok(best)
}

/// Largest distance from a vertex of one side to the union of the others.
pub fn thin_triangle_delta(a: &PathInGraph, b: &PathInGraph, c: &PathInGraph, ball: &Ball) -> Result<u32> {
    let sides = [a.indices(ball)?, b.indices(ball)?, c.indices(ball)?];
    let mut delta = 0;
    for k in 0..3 {
        let others: Vec<usize> = sides[(k + 1) % 3].iter().chain(&sides[(k + 2) % 3]).copied().collect();
        delta = delta.max(one_sided(ball, &sides[k], &others)?);
    }
    Ok(delta)
}
