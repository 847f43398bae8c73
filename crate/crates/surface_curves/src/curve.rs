use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::triangulation::Triangulation;
use crate::words::{canonical_cyclic, crossing_counts};

/// A connected simple closed curve, as the canonical cyclic sequence of
/// triangle sides it exits through, with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub word: Vec<usize>,
    pub weight: u64,
}

/// A weighted multicurve in normal coordinates on the reference
/// triangulation of `surface`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiCurve {
    pub surface: Surface,
    pub coords: Vec<u64>,
    pub components: Vec<Component>,
}

impl MultiCurve {
    pub fn empty(surface: Surface, edges: usize) -> Self {
        MultiCurve { surface, coords: vec![0; edges], components: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn norm(&self) -> u64 {
        self.coords.iter().sum()
    }

    /// A single component of weight one.
    pub fn is_simple_curve(&self) -> bool {
        self.components.len() == 1 && self.components[0].weight == 1
    }

    /// Component `k` on its own, with weight one.
    pub fn component_curve(&self, k: usize) -> MultiCurve {
        let w = &self.components[k].word;
        MultiCurve {
            surface: self.surface,
            coords: crossing_counts(w, self.coords.len()),
            components: vec![Component { word: w.clone(), weight: 1 }],
        }
    }

    /// The same components, each with weight one.
    pub fn support(&self) -> MultiCurve {
        let mut coords = vec![0u64; self.coords.len()];
        for c in &self.components {
            for &s in &c.word {
                coords[s / 2] += 1;
            }
        }
        let components =
            self.components.iter().map(|c| Component { word: c.word.clone(), weight: 1 }).collect();
        MultiCurve { surface: self.surface, coords, components }
    }

    pub fn scaled(&self, k: u64) -> MultiCurve {
        MultiCurve {
            surface: self.surface,
            coords: self.coords.iter().map(|x| x * k).collect(),
            components: self
                .components
                .iter()
                .map(|c| Component { word: c.word.clone(), weight: c.weight * k })
                .collect(),
        }
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile { surface: self.surface, coords: self.coords.clone() }
    }
}

/// On-disk form of a curve: surface and coordinates in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub surface: Surface,
    pub coords: Vec<u64>,
}

/// Result of normalization with the number of dropped components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub curve: MultiCurve,
    pub dropped_peripheral: usize,
}

/// One traced strand family: the exit sides in order, and for each exit the
/// position of the crossing on its edge (counted in the frame of side `2e`).
#[derive(Clone, Debug)]
pub(crate) struct Trace {
    pub sides: Vec<usize>,
    pub positions: Vec<u64>,
}

pub(crate) fn trace_all(tri: &Triangulation, coords: &[u64]) -> Vec<Trace> {
    let edges = coords.len();
    let mut seen: Vec<Vec<bool>> = coords.iter().map(|&x| vec![false; x as usize]).collect();
    let mut out = Vec::new();
    for e in 0..edges {
        for p in 0..coords[e] {
            if seen[e][p as usize] {
                continue;
            }
            let t = trace_from(tri, coords, 2 * e, p);
            for (&s, &q) in t.sides.iter().zip(&t.positions) {
                seen[s / 2][q as usize] = true;
            }
            out.push(t);
        }
    }
    out
}

/// Traces the strand leaving the triangle of `side` through `side` at `pos`
/// (frame of `side`).
pub(crate) fn trace_from(tri: &Triangulation, coords: &[u64], side: usize, pos: u64) -> Trace {
    let (mut s, mut k) = (side, pos);
    let mut sides = Vec::new();
    let mut positions = Vec::new();
    loop {
        let x = coords[s / 2];
        sides.push(s);
        positions.push(if s % 2 == 0 { k } else { x - 1 - k });
        let (ns, nk) = tri.arc_exit(coords, s ^ 1, x - 1 - k);
        s = ns;
        k = nk;
        if s == side && k == pos {
            break;
        }
    }
    Trace { sides, positions }
}

/// Does the closed path turn the same way at every triangle (a loop around
/// a single vertex)?
pub fn is_peripheral(tri: &Triangulation, word: &[usize]) -> bool {
    let n = word.len();
    if n == 0 {
        return true;
    }
    let turns_next = |i: usize| word[i] == tri.next(word[(i + n - 1) % n] ^ 1);
    let first = turns_next(0);
    (1..n).all(|i| turns_next(i) == first)
}

impl Triangulation {
    pub fn normalize(&self, coords: &[u64]) -> Result<MultiCurve> {
        Ok(self.normalize_report(coords)?.curve)
    }

    /// Validates coordinates, traces components, drops peripheral (or
    /// vertex-link) components and returns the canonical multicurve.
    pub fn normalize_report(&self, coords: &[u64]) -> Result<Normalized> {
        self.check_coordinates(coords).map_err(Error::InvalidCoordinates)?;
        let mut classes: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        let mut dropped = 0;
        for t in trace_all(self, coords) {
            if is_peripheral(self, &t.sides) {
                dropped += 1;
                continue;
            }
            *classes.entry(canonical_cyclic(&t.sides)).or_default() += 1;
        }
        Ok(Normalized { curve: self.assemble(classes), dropped_peripheral: dropped })
    }

    fn assemble(&self, classes: BTreeMap<Vec<usize>, u64>) -> MultiCurve {
        let mut coords = vec![0u64; self.edge_count()];
        let mut components = Vec::with_capacity(classes.len());
        for (word, weight) in classes {
            for &s in &word {
                coords[s / 2] += weight;
            }
            components.push(Component { word, weight });
        }
        MultiCurve { surface: self.surface(), coords, components }
    }

    /// Builds a multicurve from closed paths (already reduced, pairwise
    /// disjoint). Used when curves come from tracks rather than coordinates.
    pub fn curve_from_words(&self, words: &[(Vec<usize>, u64)]) -> Result<MultiCurve> {
        let mut coords = vec![0u64; self.edge_count()];
        for (w, k) in words {
            for &s in w {
                coords[s / 2] += k;
            }
        }
        let c = self.normalize(&coords)?;
        Ok(c)
    }

    pub fn curve_from_file(&self, f: &CurveFile) -> Result<MultiCurve> {
        if f.surface != self.surface() {
            return Err(Error::MismatchedSurface);
        }
        self.normalize(&f.coords)
    }

    /// All essential simple closed curves with coordinate sum at most
    /// `maxnorm`, ordered by norm and then coordinates.
    pub fn enumerate_curves(&self, maxnorm: u64) -> Vec<MultiCurve> {
        if maxnorm == 0 {
            return Vec::new();
        }
        let plan = EnumPlan::new(self);
        let first = plan.order[0];
        let mut found: Vec<Vec<u64>> = (0..=maxnorm)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut coords = vec![0u64; self.edge_count()];
                coords[first] = v;
                let mut acc = Vec::new();
                plan.search(self, 1, v, maxnorm, &mut coords, &mut acc);
                acc
            })
            .collect();
        found.sort_by(|a, b| (a.iter().sum::<u64>(), a).cmp(&(b.iter().sum::<u64>(), b)));
        found
            .into_iter()
            .map(|c| {
                let t = trace_from(self, &c, first_nonzero_side(&c), 0);
                MultiCurve {
                    surface: self.surface(),
                    components: vec![Component { word: canonical_cyclic(&t.sides), weight: 1 }],
                    coords: c,
                }
            })
            .collect()
    }
}

fn first_nonzero_side(c: &[u64]) -> usize {
    2 * c.iter().position(|&x| x > 0).unwrap()
}

struct EnumPlan {
    order: Vec<usize>,
    /// Triangles completed once the first `k+1` edges of `order` are set.
    completes: Vec<Vec<usize>>,
}

impl EnumPlan {
    fn new(tri: &Triangulation) -> Self {
        let edges = tri.edge_count();
        let mut order = Vec::with_capacity(edges);
        let mut placed = vec![false; edges];
        // greedy: repeatedly take the edge that completes the most triangles
        while order.len() < edges {
            let best = (0..edges)
                .filter(|&e| !placed[e])
                .max_by_key(|&e| {
                    let done = tri
                        .triangles()
                        .iter()
                        .filter(|t| t.iter().any(|s| s / 2 == e))
                        .filter(|t| t.iter().all(|s| s / 2 == e || placed[s / 2]))
                        .count();
                    let touched = tri
                        .triangles()
                        .iter()
                        .filter(|t| t.iter().any(|s| s / 2 == e))
                        .filter(|t| t.iter().any(|s| placed[s / 2]))
                        .count();
                    (done, touched, std::cmp::Reverse(e))
                })
                .unwrap();
            placed[best] = true;
            order.push(best);
        }
        let rank: Vec<usize> = {
            let mut r = vec![0; edges];
            for (i, &e) in order.iter().enumerate() {
                r[e] = i;
            }
            r
        };
        let mut completes = vec![Vec::new(); edges];
        for (t, tri_sides) in tri.triangles().iter().enumerate() {
            let last = tri_sides.iter().map(|s| rank[s / 2]).max().unwrap();
            completes[last].push(t);
        }
        EnumPlan { order, completes }
    }

    fn triangles_ok(&self, tri: &Triangulation, k: usize, coords: &[u64]) -> bool {
        self.completes[k].iter().all(|&t| {
            let [x, y, z] = tri.triangles()[t].map(|s| coords[s / 2]);
            (x + y + z) % 2 == 0 && x <= y + z && y <= x + z && z <= x + y
        })
    }

    fn search(
        &self,
        tri: &Triangulation,
        k: usize,
        sum: u64,
        maxnorm: u64,
        coords: &mut Vec<u64>,
        acc: &mut Vec<Vec<u64>>,
    ) {
        if !self.triangles_ok(tri, k - 1, coords) {
            return;
        }
        if k == self.order.len() {
            if sum > 0 && is_single_essential(tri, coords) {
                acc.push(coords.clone());
            }
            return;
        }
        let e = self.order[k];
        for v in 0..=(maxnorm - sum) {
            coords[e] = v;
            self.search(tri, k + 1, sum + v, maxnorm, coords, acc);
        }
        coords[e] = 0;
    }
}

fn is_single_essential(tri: &Triangulation, coords: &[u64]) -> bool {
    // every vertex needs an empty corner, otherwise a peripheral loop splits off
    let mut has_empty = vec![false; tri.vertex_count()];
    for s in 0..tri.side_count() {
        if tri.corner_count(coords, s) == 0 {
            has_empty[tri.corner_vertex(s)] = true;
        }
    }
    if has_empty.iter().any(|&b| !b) {
        return false;
    }
    let total: u64 = coords.iter().sum();
    let t = trace_from(tri, coords, first_nonzero_side(coords), 0);
    t.sides.len() as u64 == total && !is_peripheral(tri, &t.sides)
}
