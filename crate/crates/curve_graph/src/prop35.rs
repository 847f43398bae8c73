//! A finite checker for the path-family criterion for hyperbolicity, and
//! the hyperbolicity constant its proof produces.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A graph with unit edges and a path `family[x][y]` from `x` to `y` for
/// every ordered pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionInstance {
    pub adjacency: Vec<Vec<usize>>,
    pub family: Vec<Vec<Vec<usize>>>,
    pub constant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub condition: u8,
    /// The points involved: `(x, y)` for conditions 1 and 2 (with the
    /// parameter pair appended for 2), `(x, y, z)` for 3.
    pub points: Vec<usize>,
    pub measured: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop35Report {
    pub verified: bool,
    pub violation: Option<Violation>,
    pub exhaustive: bool,
    pub triples_checked: usize,
    /// Largest measured value for each condition.
    pub measured: [u32; 3],
    pub delta: Option<DeltaBound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaBound {
    pub kappa: f64,
    pub delta: f64,
}

/// Largest solution of `x = D log2(8x) + 2D`, and `delta = 9 kappa + D`.
pub fn delta_bound(d: f64) -> DeltaBound {
    let f = |x: f64| x - d * (8.0 * x).log2() - 2.0 * d;
    // f is convex with its minimum at D / ln 2
    let mut lo = d / std::f64::consts::LN_2;
    if f(lo) > 0.0 {
        return DeltaBound { kappa: 0.0, delta: d };
    }
    let mut hi = 2.0 * lo + 16.0 * d + 1.0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut kappa = 0.5 * (lo + hi);
    let snapped = kappa.round();
    if f(snapped) == 0.0 {
        kappa = snapped;
    }
    DeltaBound { kappa, delta: 9.0 * kappa + d }
}

pub fn all_pairs(adjacency: &[Vec<usize>]) -> Vec<Vec<u32>> {
    (0..adjacency.len())
        .map(|s| {
            let mut dist = vec![u32::MAX; adjacency.len()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &adjacency[v] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}

fn to_set(d: &[Vec<u32>], a: &[usize], b: &[usize]) -> u32 {
    a.iter().map(|&x| b.iter().map(|&y| d[x][y]).min().unwrap_or(u32::MAX)).max().unwrap_or(0)
}

pub const EXHAUSTIVE_LIMIT: usize = 10_000;

/// Checks the three conditions with constant `D`; exhaustive below
/// [`EXHAUSTIVE_LIMIT`] triples, otherwise over `samples` seeded triples.
pub fn prop35_check(inst: &CriterionInstance, samples: usize, seed: u64) -> Prop35Report {
    let n = inst.adjacency.len();
    let d = all_pairs(&inst.adjacency);
    let limit = inst.constant.floor() as u32;
    let exhaustive = n.saturating_mul(n).saturating_mul(n) < EXHAUSTIVE_LIMIT;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[usize; 3]> = if exhaustive {
        (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| [x, y, z]))).collect()
    } else {
        (0..samples).map(|_| [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)]).collect()
    };
    let mut measured = [0u32; 3];
    let mut violation = None;
    let mut note = |cond: u8, value: u32, points: Vec<usize>, violation: &mut Option<Violation>| {
        measured[cond as usize - 1] = measured[cond as usize - 1].max(value);
        if value > limit && violation.is_none() {
            *violation = Some(Violation { condition: cond, points, measured: value });
        }
    };
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
    } else {
        triples.iter().map(|t| (t[0], t[1])).collect()
    };
    for &(x, y) in &pairs {
        let path = &inst.family[x][y];
        if d[x][y] <= 1 {
            let diam = path.iter().flat_map(|&a| path.iter().map(move |&b| (a, b))).map(|(a, b)| d[a][b]).max();
            note(1, diam.unwrap_or(0), vec![x, y], &mut violation);
        }
        for s in 0..path.len() {
            for t in s..path.len() {
                let sub = &path[s..=t];
                let other = &inst.family[path[s]][path[t]];
                let h = to_set(&d, sub, other).max(to_set(&d, other, sub));
                note(2, h, vec![x, y, s, t], &mut violation);
            }
        }
    }
    for &[x, y, z] in &triples {
        let union: Vec<usize> = inst.family[x][z].iter().chain(&inst.family[z][y]).copied().collect();
        note(3, to_set(&d, &inst.family[x][y], &union), vec![x, y, z], &mut violation);
    }
    let verified = violation.is_none();
    Prop35Report {
        verified,
        violation,
        exhaustive,
        triples_checked: triples.len(),
        measured,
        delta: verified.then(|| delta_bound(inst.constant)),
    }
}

/// One shortest path for every ordered pair, choosing the smallest
/// predecessor at each step.
pub fn geodesic_family(adjacency: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let d = all_pairs(adjacency);
    let n = adjacency.len();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if d[x][y] == u32::MAX {
                        return vec![x];
                    }
                    let mut path = vec![y];
                    let mut v = y;
                    while v != x {
                        v = *adjacency[v].iter().filter(|&&w| d[x][w] + 1 == d[x][v]).min().unwrap();
                        path.push(v);
                    }
                    path.reverse();
                    path
                })
                .collect()
        })
        .collect()
}

/// A tree on `n` vertices with parent `(i - 1) / arity`.
pub fn tree(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for i in 1..n {
        let p = (i - 1) / arity;
        adj[i].push(p);
        adj[p].push(i);
    }
    adj
}

/// The `w x h` grid; vertex `(col, row)` is `row * w + col`.
pub fn grid(w: usize, h: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); w * h];
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                adj[v].push(v + 1);
                adj[v + 1].push(v);
            }
            if r + 1 < h {
                adj[v].push(v + w);
                adj[v + w].push(v);
            }
        }
    }
    adj
}

/// Grid paths that run horizontally first, then vertically.
pub fn l_path_family(w: usize, h: usize) -> Vec<Vec<Vec<usize>>> {
    let n = w * h;
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (mut c, r) = (x % w, x / w);
                    let (tc, tr) = (y % w, y / w);
                    let mut path = vec![x];
                    while c != tc {
                        c = if c < tc { c + 1 } else { c - 1 };
                        path.push(r * w + c);
                    }
                    let mut r = r;
                    while r != tr {
                        r = if r < tr { r + 1 } else { r - 1 };
                        path.push(r * w + c);
                    }
                    path
                })
                .collect()
        })
        .collect()
}
