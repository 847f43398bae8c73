//! Simultaneous normal realization of two multicurves, bigon removal, and
//! the cell structure of the complement of their union.

use std::collections::HashMap;
use std::sync::Arc;

use crate::chart::reference_triangulation;
use crate::curve::{trace_all, MultiCurve, Trace};
use crate::error::{Error, Result};
use crate::triangulation::Triangulation;
use crate::words::{canonical_cyclic, crossing_counts, reduce_cyclic};

const ALPHA: usize = 0;
const BETA: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Pt {
    fam: usize,
    strand: usize,
    step: usize,
}

/// A chord of a strand: chord `t` runs inside one triangle from the
/// strand's crossing `t-1` to its crossing `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordRef {
    pub strand: usize,
    pub chord: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub triangle: usize,
    pub alpha: ChordRef,
    pub beta: ChordRef,
    /// Does the first curve pass from the second's right to its left?
    pub alpha_exits_left: bool,
}

/// A quadrant at a crossing, named by the sides of the two oriented chords.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    pub crossing: usize,
    pub alpha_left: bool,
    pub beta_left: bool,
}

impl Corner {
    pub fn quadrant(&self) -> usize {
        2 * self.alpha_left as usize + self.beta_left as usize
    }
}

/// A complementary region of the union of the two families. `euler` is the
/// Euler characteristic with its ideal vertices filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub euler: i64,
    pub vertices: Vec<usize>,
    pub corners: Vec<Corner>,
}

impl Region {
    pub fn is_disc_like(&self) -> bool {
        self.euler == 1
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub crossings: Vec<Crossing>,
    /// Crossing ids met along each strand, in strand order.
    pub alpha_order: Vec<Vec<usize>>,
    pub beta_order: Vec<Vec<usize>>,
    pub regions: Vec<Region>,
    /// Region of each quadrant, indexed by `Corner::quadrant`.
    pub quadrant_region: Vec<[usize; 4]>,
}

#[derive(Clone, Debug)]
struct Family {
    coords: Vec<u64>,
    traces: Vec<Trace>,
    labels: Vec<usize>,
}

impl Family {
    fn new(tri: &Triangulation, coords: Vec<u64>, words: &[Vec<usize>]) -> Result<Self> {
        let traces = trace_all(tri, &coords);
        let lookup: HashMap<&Vec<usize>, usize> =
            words.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let labels = traces
            .iter()
            .map(|t| lookup.get(&canonical_cyclic(&t.sides)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Model("strand does not match a component".into()))?;
        Ok(Family { coords, traces, labels })
    }
}

/// Two multicurve supports drawn together in normal position, with strand
/// orders on every edge.
#[derive(Clone, Debug)]
pub struct Realization {
    tri: Arc<Triangulation>,
    fams: [Family; 2],
    order: Vec<Vec<Pt>>,
    index: [Vec<Vec<usize>>; 2],
    stride: usize,
    by_triangle: Vec<[Vec<ChordRef>; 2]>,
}

fn crosses(a: (i64, i64), b: (i64, i64)) -> bool {
    let (lo, hi) = if a.0 < a.1 { a } else { (a.1, a.0) };
    (lo < b.0 && b.0 < hi) != (lo < b.1 && b.1 < hi)
}

impl Realization {
    fn layout(tri: Arc<Triangulation>, fams: [Family; 2]) -> Self {
        let edges = tri.edge_count();
        let mut slots: Vec<Vec<Option<Pt>>> =
            (0..edges).map(|e| vec![None; (fams[0].coords[e] + fams[1].coords[e]) as usize]).collect();
        let mut index: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
        for fam in [ALPHA, BETA] {
            for (strand, t) in fams[fam].traces.iter().enumerate() {
                let mut idx = Vec::with_capacity(t.sides.len());
                for (step, (&s, &q)) in t.sides.iter().zip(&t.positions).enumerate() {
                    let e = s / 2;
                    let m = if fam == ALPHA { q } else { fams[0].coords[e] + q } as usize;
                    slots[e][m] = Some(Pt { fam, strand, step });
                    idx.push(m);
                }
                index[fam].push(idx);
            }
        }
        let order: Vec<Vec<Pt>> =
            slots.into_iter().map(|v| v.into_iter().map(|p| p.expect("gap in strand order")).collect()).collect();
        let stride = order.iter().map(Vec::len).max().unwrap_or(0) + 2;
        let mut by_triangle = vec![[Vec::new(), Vec::new()]; tri.triangles().len()];
        for fam in [ALPHA, BETA] {
            for (strand, t) in fams[fam].traces.iter().enumerate() {
                for (chord, &s) in t.sides.iter().enumerate() {
                    by_triangle[tri.triangle_of(s)][fam].push(ChordRef { strand, chord });
                }
            }
        }
        Realization { tri, fams, order, index, stride, by_triangle }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    /// Exit sides of a strand of the first (`family == 0`) or second family.
    pub fn strand_sides(&self, family: usize, strand: usize) -> &[usize] {
        &self.fams[family].traces[strand].sides
    }

    pub fn strand_count(&self, family: usize) -> usize {
        self.fams[family].traces.len()
    }

    /// Index of the input component a strand belongs to.
    pub fn strand_label(&self, family: usize, strand: usize) -> usize {
        self.fams[family].labels[strand]
    }

    fn key(&self, p: Pt, side: usize) -> i64 {
        let n = self.order[side / 2].len();
        let m = self.index[p.fam][p.strand][p.step];
        // boundary parameter runs counter-clockwise along the side
        let idx = if side.is_multiple_of(2) { n - 1 - m } else { m };
        2 * (self.tri.slot_of(side) * self.stride + idx) as i64 + 1
    }

    fn span(&self) -> i64 {
        6 * self.stride as i64
    }

    fn chord_keys(&self, fam: usize, c: ChordRef) -> (i64, i64) {
        let s = &self.fams[fam].traces[c.strand].sides;
        let n = s.len();
        let prev = (c.chord + n - 1) % n;
        let entry = self.key(Pt { fam, strand: c.strand, step: prev }, s[prev] ^ 1);
        let exit = self.key(Pt { fam, strand: c.strand, step: c.chord }, s[c.chord]);
        (entry, exit)
    }

    /// The chord touching side `u` at point `p`, its far endpoint and the
    /// side that endpoint lies on.
    fn chord_from(&self, p: Pt, u: usize) -> (ChordRef, Pt, usize) {
        let s = &self.fams[p.fam].traces[p.strand].sides;
        let n = s.len();
        if s[p.step] == u {
            let prev = (p.step + n - 1) % n;
            (ChordRef { strand: p.strand, chord: p.step }, Pt { step: prev, ..p }, s[prev] ^ 1)
        } else {
            let next = (p.step + 1) % n;
            (ChordRef { strand: p.strand, chord: next }, Pt { step: next, ..p }, s[next])
        }
    }

    pub fn crossing_count(&self) -> u64 {
        let mut total = 0;
        for [alpha, beta] in &self.by_triangle {
            let ka: Vec<_> = alpha.iter().map(|&c| self.chord_keys(ALPHA, c)).collect();
            for &b in beta {
                let kb = self.chord_keys(BETA, b);
                total += ka.iter().filter(|&&k| crosses(k, kb)).count() as u64;
            }
        }
        total
    }

    /// Follows an adjacent pair into the triangle of side `u` until the two
    /// strands cross, diverge or stop being adjacent.
    fn walk(&self, mut a: Pt, mut b: Pt, mut u: usize) -> Option<(Vec<(Pt, Pt)>, (ChordRef, ChordRef))> {
        let mut path = Vec::new();
        let limit = self.order.iter().map(Vec::len).sum::<usize>();
        for _ in 0..=limit {
            let (ca, qa, va) = self.chord_from(a, u);
            let (cb, qb, vb) = self.chord_from(b, u);
            if crosses(self.chord_keys(ALPHA, ca), self.chord_keys(BETA, cb)) {
                return Some((path, (ca, cb)));
            }
            if va != vb {
                return None;
            }
            let ia = self.index[ALPHA][qa.strand][qa.step];
            let ib = self.index[BETA][qb.strand][qb.step];
            if ia.abs_diff(ib) != 1 {
                return None;
            }
            path.push((qa, qb));
            a = qa;
            b = qb;
            u = va ^ 1;
        }
        None
    }

    fn find_bigon(&self) -> Option<Vec<(Pt, Pt)>> {
        for (e, line) in self.order.iter().enumerate() {
            for w in line.windows(2) {
                if w[0].fam == w[1].fam {
                    continue;
                }
                let (a, b) = if w[0].fam == ALPHA { (w[0], w[1]) } else { (w[1], w[0]) };
                let Some((p0, end0)) = self.walk(a, b, 2 * e) else { continue };
                let Some((p1, end1)) = self.walk(a, b, 2 * e + 1) else { continue };
                if end0 == end1 {
                    continue;
                }
                let mut pairs = vec![(a, b)];
                pairs.extend(p0);
                pairs.extend(p1);
                return Some(pairs);
            }
        }
        None
    }

    fn swap(&mut self, a: Pt, b: Pt) {
        let ia = self.index[a.fam][a.strand][a.step];
        let ib = self.index[b.fam][b.strand][b.step];
        let e = self.fams[a.fam].traces[a.strand].sides[a.step] / 2;
        self.order[e].swap(ia, ib);
        self.index[a.fam][a.strand][a.step] = ib;
        self.index[b.fam][b.strand][b.step] = ia;
    }

    /// Removes bigons bounded by an adjacent strip of one strand of each
    /// family, until none remain.
    fn remove_strip_bigons(&mut self) {
        while let Some(pairs) = self.find_bigon() {
            for (a, b) in pairs {
                self.swap(a, b);
            }
        }
    }

    /// Cell structure of the complement of both families.
    pub fn arrangement(&self) -> Result<Arrangement> {
        let tri = &self.tri;
        let span = self.span();
        let left = |t: i64, (p, q): (i64, i64)| (t - q).rem_euclid(span) < (p - q).rem_euclid(span);

        let mut crossings = Vec::new();
        let mut on_alpha: HashMap<ChordRef, Vec<(i64, usize)>> = HashMap::new();
        let mut on_beta: HashMap<ChordRef, Vec<(i64, usize)>> = HashMap::new();
        let mut face_offset = Vec::with_capacity(tri.triangles().len());
        let mut faces = 0usize;
        let mut gap_face: Vec<Vec<usize>> = vec![Vec::new(); tri.side_count()];
        let mut quadrant_face: Vec<[usize; 4]> = Vec::new();

        for (t, sides) in tri.triangles().iter().enumerate() {
            let [alpha, beta] = &self.by_triangle[t];
            let chords: Vec<(usize, ChordRef, (i64, i64))> = alpha
                .iter()
                .map(|&c| (ALPHA, c, self.chord_keys(ALPHA, c)))
                .chain(beta.iter().map(|&c| (BETA, c, self.chord_keys(BETA, c))))
                .collect();
            let mut ids: HashMap<Vec<bool>, usize> = HashMap::new();
            let mut face_of = |signs: Vec<bool>| {
                let k = ids.len();
                *ids.entry(signs).or_insert(k)
            };
            for &side in sides {
                let n = self.order[side / 2].len();
                let base = 2 * (tri.slot_of(side) * self.stride) as i64;
                gap_face[side] = (0..=n)
                    .map(|g| {
                        let at = base + 2 * g as i64;
                        faces + face_of(chords.iter().map(|c| left(at, c.2)).collect())
                    })
                    .collect();
            }
            let na = alpha.len();
            let mut local_crossings = 0;
            for ia in 0..na {
                for ib in na..chords.len() {
                    let (ka, kb) = (chords[ia].2, chords[ib].2);
                    if !crosses(ka, kb) {
                        continue;
                    }
                    local_crossings += 1;
                    let id = crossings.len();
                    crossings.push(Crossing {
                        triangle: t,
                        alpha: chords[ia].1,
                        beta: chords[ib].1,
                        alpha_exits_left: left(ka.1, kb),
                    });
                    let base: Vec<bool> = chords
                        .iter()
                        .map(|c| if c.0 == ALPHA { left(ka.0, c.2) } else { left(kb.0, c.2) })
                        .collect();
                    let mut quads = [0; 4];
                    for (q, slot) in quads.iter_mut().enumerate() {
                        let mut s = base.clone();
                        s[ia] = q >= 2;
                        s[ib] = q % 2 == 1;
                        *slot = faces + face_of(s);
                    }
                    quadrant_face.push(quads);
                    let along = |from: (i64, i64), other: (i64, i64)| {
                        let d = |k: i64| (k - from.0).rem_euclid(span);
                        if d(other.0) < d(from.1) {
                            d(other.0)
                        } else {
                            d(other.1)
                        }
                    };
                    on_alpha.entry(chords[ia].1).or_default().push((along(ka, kb), id));
                    on_beta.entry(chords[ib].1).or_default().push((along(kb, ka), id));
                }
            }
            let expected = 1 + chords.len() + local_crossings;
            if ids.len() != expected {
                return Err(Error::Model(format!(
                    "triangle {t}: {} faces, expected {expected}",
                    ids.len()
                )));
            }
            face_offset.push(faces);
            faces += ids.len();
        }

        let mut parent: Vec<usize> = (0..faces).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in 0..tri.edge_count() {
            let n = self.order[e].len();
            for g in 0..=n {
                let (x, y) = (root(&mut parent, gap_face[2 * e][g]), root(&mut parent, gap_face[2 * e + 1][n - g]));
                parent[x] = y;
            }
        }
        let mut region_of_root = HashMap::new();
        let mut region = vec![0; faces];
        for f in 0..faces {
            let r = root(&mut parent, f);
            let k = region_of_root.len();
            region[f] = *region_of_root.entry(r).or_insert(k);
        }
        let count = region_of_root.len();
        let mut regions: Vec<Region> =
            (0..count).map(|_| Region { euler: 0, vertices: Vec::new(), corners: Vec::new() }).collect();
        for &r in &region {
            regions[r].euler += 1;
        }
        for e in 0..tri.edge_count() {
            for g in 0..=self.order[e].len() {
                regions[region[gap_face[2 * e][g]]].euler -= 1;
            }
        }
        let mut vertex_region = vec![usize::MAX; tri.vertex_count()];
        for s in 0..tri.side_count() {
            let n = self.order[s / 2].len();
            let r = region[gap_face[s][n]];
            let v = tri.corner_vertex(s);
            if vertex_region[v] == usize::MAX {
                vertex_region[v] = r;
                regions[r].euler += 1;
                regions[r].vertices.push(v);
            } else if vertex_region[v] != r {
                return Err(Error::Model(format!("vertex {v} split between regions")));
            }
        }
        let mut quadrant_region = Vec::with_capacity(crossings.len());
        for (id, quads) in quadrant_face.iter().enumerate() {
            let mut qr = [0; 4];
            for q in 0..4 {
                qr[q] = region[quads[q]];
                regions[qr[q]].corners.push(Corner { crossing: id, alpha_left: q >= 2, beta_left: q % 2 == 1 });
            }
            quadrant_region.push(qr);
        }

        let order_along = |fam: usize, map: &mut HashMap<ChordRef, Vec<(i64, usize)>>| {
            (0..self.fams[fam].traces.len())
                .map(|strand| {
                    let len = self.fams[fam].traces[strand].sides.len();
                    let mut seq = Vec::new();
                    for chord in 0..len {
                        if let Some(mut v) = map.remove(&ChordRef { strand, chord }) {
                            v.sort_unstable();
                            seq.extend(v.into_iter().map(|(_, id)| id));
                        }
                    }
                    seq
                })
                .collect::<Vec<_>>()
        };
        let alpha_order = order_along(ALPHA, &mut on_alpha);
        let beta_order = order_along(BETA, &mut on_beta);
        Ok(Arrangement { crossings, alpha_order, beta_order, regions, quadrant_region })
    }

    /// On a closed surface, a disc region holding the vertex with two
    /// corners is a bigon the edge orders cannot see. Moves the second
    /// family's side of it across the vertex.
    fn push_vertex_bigon(&mut self) -> Result<bool> {
        if !self.tri.surface().is_closed() {
            return Ok(false);
        }
        let arr = self.arrangement()?;
        let Some(reg) = arr
            .regions
            .iter()
            .find(|r| r.euler == 1 && !r.vertices.is_empty() && r.corners.len() == 2)
        else {
            return Ok(false);
        };
        let (x, y) = (reg.corners[0], reg.corners[1]);
        if x.crossing == y.crossing {
            return Err(Error::Model("bigon with a single crossing".into()));
        }
        let cx = arr.crossings[x.crossing];
        let cy = arr.crossings[y.crossing];
        let ka = self.chord_keys(ALPHA, cx.alpha);
        let kb = self.chord_keys(BETA, cx.beta);
        let span = self.span();
        let left = |t: i64, (p, q): (i64, i64)| (t - q).rem_euclid(span) < (p - q).rem_euclid(span);
        let alpha_forward = left(ka.1, kb) == x.beta_left;
        let beta_forward = left(kb.1, ka) == x.alpha_left;
        // within one chord, is `b` met after `a` when travelling in direction `fwd`?
        let ahead = |seq: &Vec<usize>, a: usize, b: usize, fwd: bool| {
            let pa = seq.iter().position(|&c| c == a).unwrap();
            let pb = seq.iter().position(|&c| c == b).unwrap();
            (pb > pa) == fwd
        };
        let a_seq = &arr.alpha_order[cx.alpha.strand];
        let b_seq = &arr.beta_order[cx.beta.strand];
        let alpha_wrap = !ahead(a_seq, x.crossing, y.crossing, alpha_forward);
        let beta_wrap = ahead(b_seq, x.crossing, y.crossing, beta_forward);

        let a_sides = &self.fams[ALPHA].traces[cx.alpha.strand].sides;
        let b_sides = &self.fams[BETA].traces[cx.beta.strand].sides;
        let alpha_arc = arc_exits(a_sides, cx.alpha.chord, cy.alpha.chord, alpha_forward, alpha_wrap);
        let beta_rest = arc_exits(b_sides, cy.beta.chord, cx.beta.chord, beta_forward, beta_wrap);
        let mut word = beta_rest;
        word.extend(alpha_arc);
        let word = reduce_cyclic(&word);

        let edges = self.tri.edge_count();
        let old = crossing_counts(b_sides, edges);
        let new = crossing_counts(&word, edges);
        let coords: Vec<u64> =
            self.fams[BETA].coords.iter().zip(old.iter().zip(&new)).map(|(c, (o, n))| c - o + n).collect();
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); self.fams[BETA].labels.iter().max().map_or(0, |m| m + 1)];
        for (t, &l) in self.fams[BETA].traces.iter().zip(&self.fams[BETA].labels) {
            words[l] = canonical_cyclic(&t.sides);
        }
        words[self.fams[BETA].labels[cx.beta.strand]] = canonical_cyclic(&word);
        let beta = Family::new(&self.tri, coords, &words)?;
        let alpha = self.fams[ALPHA].clone();
        *self = Realization::layout(self.tri.clone(), [alpha, beta]);
        Ok(true)
    }
}

/// Exit sides met travelling along a closed strand from a point on chord
/// `from` to a point on chord `to`. When the chords are equal, `wrap` tells
/// whether the target lies behind the start (a full turn) or ahead (none).
pub(crate) fn arc_exits(sides: &[usize], from: usize, to: usize, forward: bool, wrap: bool) -> Vec<usize> {
    let n = sides.len();
    let mut count = if forward { (to + n - from) % n } else { (from + n - to) % n };
    if count == 0 && wrap {
        count = n;
    }
    (0..count)
        .map(|k| if forward { sides[(from + k) % n] } else { sides[(from + 2 * n - 1 - k) % n] ^ 1 })
        .collect()
}

fn family(tri: &Triangulation, c: &MultiCurve) -> Result<Family> {
    let s = c.support();
    let words: Vec<Vec<usize>> = s.components.iter().map(|k| k.word.clone()).collect();
    Family::new(tri, s.coords, &words)
}

/// Realizes the supports of two multicurves in minimal position.
pub fn realize(alpha: &MultiCurve, beta: &MultiCurve) -> Result<Realization> {
    if alpha.surface != beta.surface {
        return Err(Error::MismatchedSurface);
    }
    let tri = reference_triangulation(alpha.surface)?;
    let fams = [family(&tri, alpha)?, family(&tri, beta)?];
    let mut r = Realization::layout(tri, fams);
    loop {
        r.remove_strip_bigons();
        if !r.push_vertex_bigon()? {
            return Ok(r);
        }
    }
}

/// Do the two multicurves cut the surface into discs and once-punctured
/// discs?
pub fn fills(alpha: &MultiCurve, beta: &MultiCurve) -> Result<bool> {
    let arr = realize(alpha, beta)?.arrangement()?;
    Ok(arr.regions.iter().all(|r| {
        r.euler == 1 && (alpha.surface.is_closed() || r.vertices.len() <= 1)
    }))
}
