//! Brute-force intersection numbers: try every interleaving of the two
//! curves' strands along every edge, draw straight chords in each triangle,
//! and keep the fewest crossings.

use crate::chart::reference_triangulation;
use crate::curve::MultiCurve;
use crate::error::{Error, Result};
use crate::triangulation::Triangulation;

const MAX_ENTRY: u64 = 8;
const MAX_SEARCH: f64 = 5e8;

/// Chords of one family inside a triangle, as (side, own position) pairs.
fn family_chords(tri: &Triangulation, coords: &[u64], t: usize) -> Vec<[(usize, u64); 2]> {
    let sides = tri.triangles()[t];
    let mut out = Vec::new();
    for &s in &sides {
        // arcs cutting the corner between s and next(s)
        let n = tri.next(s);
        for k in 0..tri.corner_count(coords, s) {
            out.push([(s, k), (n, coords[n / 2] - 1 - k)]);
        }
    }
    out
}

fn interleavings(a: u64, b: u64) -> Vec<u32> {
    let n = (a + b) as u32;
    (0u32..(1 << n)).filter(|m| m.count_ones() as u64 == b).collect()
}

/// Merged index (frame of side `2e`) of the `k`-th point of a family.
fn merged(mask: u32, n: u32, beta: bool, k: u64) -> u32 {
    let mut seen = 0;
    for i in 0..n {
        if ((mask >> i) & 1 == 1) == beta {
            if seen == k {
                return i;
            }
            seen += 1;
        }
    }
    unreachable!("point index out of range")
}

struct Search<'a> {
    tri: &'a Triangulation,
    alpha: Vec<Vec<[(usize, u64); 2]>>,
    beta: Vec<Vec<[(usize, u64); 2]>>,
    sizes: Vec<u32>,
    options: Vec<Vec<u32>>,
    order: Vec<usize>,
    completes: Vec<Vec<usize>>,
    best: u64,
}

impl Search<'_> {
    fn boundary(&self, masks: &[u32], beta: bool, (side, own): (usize, u64)) -> i64 {
        let e = side / 2;
        let n = self.sizes[e];
        let frame = if side % 2 == 0 { own } else { (if beta { self.beta_count(e) } else { self.alpha_count(e) }) - 1 - own };
        let m = merged(masks[e], n, beta, frame);
        let pos = if side % 2 == 0 { m } else { n - 1 - m };
        let idx = n - 1 - pos;
        (self.tri.slot_of(side) as i64) * 64 + idx as i64
    }

    fn alpha_count(&self, e: usize) -> u64 {
        self.sizes[e] as u64 - self.options[e][0].count_ones() as u64
    }

    fn beta_count(&self, e: usize) -> u64 {
        self.options[e][0].count_ones() as u64
    }

    fn triangle_crossings(&self, masks: &[u32], t: usize) -> u64 {
        let keys = |beta: bool, chords: &[[(usize, u64); 2]]| {
            chords
                .iter()
                .map(|c| {
                    let (p, q) = (self.boundary(masks, beta, c[0]), self.boundary(masks, beta, c[1]));
                    (p.min(q), p.max(q))
                })
                .collect::<Vec<_>>()
        };
        let ka = keys(false, &self.alpha[t]);
        let kb = keys(true, &self.beta[t]);
        let mut n = 0;
        for &(lo, hi) in &ka {
            for &(p, q) in &kb {
                if (lo < p && p < hi) != (lo < q && q < hi) {
                    n += 1;
                }
            }
        }
        n
    }

    fn run(&mut self, k: usize, masks: &mut Vec<u32>, so_far: u64) {
        if so_far >= self.best {
            return;
        }
        if k == self.order.len() {
            self.best = so_far;
            return;
        }
        let e = self.order[k];
        for i in 0..self.options[e].len() {
            masks[e] = self.options[e][i];
            let extra: u64 = self.completes[k].iter().map(|&t| self.triangle_crossings(masks, t)).sum();
            self.run(k + 1, masks, so_far + extra);
        }
    }
}

/// Minimum number of crossings over all normal drawings of two single
/// curves on a punctured surface.
pub fn oracle_intersection(alpha: &MultiCurve, beta: &MultiCurve) -> Result<u64> {
    if alpha.surface != beta.surface {
        return Err(Error::MismatchedSurface);
    }
    if alpha.surface.is_closed() {
        return Err(Error::ClosedSurface("oracle_intersection"));
    }
    if alpha.components.len() > 1 || beta.components.len() > 1 {
        return Err(Error::InvalidCoordinates("oracle takes single curves".into()));
    }
    if let Some(x) = alpha.coords.iter().chain(&beta.coords).find(|&&x| x > MAX_ENTRY) {
        return Err(Error::TooLarge(format!("coordinate {x} exceeds {MAX_ENTRY}")));
    }
    let tri = reference_triangulation(alpha.surface)?;
    let edges = tri.edge_count();
    let sizes: Vec<u32> = (0..edges).map(|e| (alpha.coords[e] + beta.coords[e]) as u32).collect();
    let options: Vec<Vec<u32>> = (0..edges).map(|e| interleavings(alpha.coords[e], beta.coords[e])).collect();
    let space: f64 = options.iter().map(|o| o.len() as f64).product();
    if space > MAX_SEARCH {
        return Err(Error::TooLarge(format!("{space:.0} interleavings")));
    }
    let mut order: Vec<usize> = (0..edges).collect();
    order.sort_by_key(|&e| options[e].len());
    let mut rank = vec![0; edges];
    for (i, &e) in order.iter().enumerate() {
        rank[e] = i;
    }
    let mut completes = vec![Vec::new(); edges];
    for (t, sides) in tri.triangles().iter().enumerate() {
        completes[sides.iter().map(|s| rank[s / 2]).max().unwrap()].push(t);
    }
    let triangles = tri.triangles().len();
    let mut search = Search {
        tri: &tri,
        alpha: (0..triangles).map(|t| family_chords(&tri, &alpha.coords, t)).collect(),
        beta: (0..triangles).map(|t| family_chords(&tri, &beta.coords, t)).collect(),
        sizes,
        options,
        order,
        completes,
        best: u64::MAX,
    };
    let mut masks = vec![0u32; edges];
    search.run(0, &mut masks, 0);
    Ok(search.best)
}
