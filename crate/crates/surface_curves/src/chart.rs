//! Derivation of the reference triangulation from a complete track.
//!
//! Each trigon of the track is merged into a neighbouring punctured region
//! by deleting one branch; what survives (after pruning leaves and
//! suppressing bivalent switches) is a trivalent spine whose dual is an
//! ideal triangulation. Every branch of the track gets a path in the spine,
//! written as the sequence of triangle sides it exits through.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::model::{standard_model, Half, SwitchHalves, TrackModel};
use crate::surface::Surface;
use crate::triangulation::Triangulation;
use crate::words::reduce_path;

#[derive(Clone, Debug)]
pub struct Chart {
    pub triangulation: Arc<Triangulation>,
    /// Path of each branch from its end 0 to its end 1.
    pub branch_paths: Vec<Vec<usize>>,
    /// Triangle at which each switch sits.
    pub switch_triangle: Vec<usize>,
}

struct Ribbon {
    sigma: Vec<usize>,
    switch_of: Vec<usize>,
}

impl Ribbon {
    fn new(switches: &[SwitchHalves], branch_count: usize) -> Result<Self> {
        let mut sigma = vec![usize::MAX; 2 * branch_count];
        let mut switch_of = vec![usize::MAX; 2 * branch_count];
        for (i, s) in switches.iter().enumerate() {
            let (l, r, sl) = (s.large.dart(), s.small_right.dart(), s.small_left.dart());
            for d in [l, r, sl] {
                if d >= sigma.len() || switch_of[d] != usize::MAX {
                    return Err(Error::Model(format!("half {d} misplaced")));
                }
                switch_of[d] = i;
            }
            sigma[l] = r;
            sigma[r] = sl;
            sigma[sl] = l;
        }
        if switch_of.contains(&usize::MAX) {
            return Err(Error::Model("dangling half".into()));
        }
        Ok(Ribbon { sigma, switch_of })
    }

    fn phi(&self, d: usize) -> usize {
        self.sigma[d ^ 1]
    }

    /// Face label for every dart (face on the right of the outgoing dart).
    fn faces(&self) -> (Vec<usize>, usize) {
        let mut face = vec![usize::MAX; self.sigma.len()];
        let mut count = 0;
        for d in 0..self.sigma.len() {
            if face[d] != usize::MAX {
                continue;
            }
            let mut x = d;
            while face[x] == usize::MAX {
                face[x] = count;
                x = self.phi(x);
            }
            count += 1;
        }
        (face, count)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn reverse_darts(path: &[usize]) -> Vec<usize> {
    path.iter().rev().map(|d| d ^ 1).collect()
}

pub fn derive_chart(
    surface: Surface,
    switches: &[SwitchHalves],
    branch_count: usize,
    puncture_halves: &[Half],
) -> Result<Chart> {
    let rib = Ribbon::new(switches, branch_count)?;
    let (face, face_count) = rib.faces();
    let mut cusps = vec![0usize; face_count];
    for s in switches {
        cusps[face[s.small_left.dart()]] += 1;
    }

    let mut marked = vec![false; face_count];
    let mut face_puncture = vec![usize::MAX; face_count];
    for (p, h) in puncture_halves.iter().enumerate() {
        let f = face[h.dart()];
        if marked[f] || cusps[f] != 1 {
            return Err(Error::Model(format!("puncture {p} not in a monogon")));
        }
        marked[f] = true;
        face_puncture[f] = p;
    }
    for f in 0..face_count {
        if !marked[f] && cusps[f] != 3 {
            return Err(Error::Model(format!("face {f} has {} cusps", cusps[f])));
        }
    }
    if puncture_halves.is_empty() {
        marked[0] = true;
        face_puncture[0] = 0;
    }

    // Merge trigons into marked groups one branch at a time.
    let mut parent: Vec<usize> = (0..face_count).collect();
    let mut deleted = vec![false; branch_count];
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); branch_count];
    let mut order = Vec::new();
    loop {
        let mut pick = None;
        for b in 0..branch_count {
            if deleted[b] {
                continue;
            }
            let fa = find(&mut parent, face[2 * b]);
            let fb = find(&mut parent, face[2 * b + 1]);
            if marked[fa] != marked[fb] {
                pick = Some((b, fa, fb));
                break;
            }
        }
        let Some((b, fa, fb)) = pick else { break };
        let h = if marked[fa] { 2 * b + 1 } else { 2 * b };
        let mut walk = Vec::new();
        let mut x = rib.phi(h);
        while x != h {
            walk.push(x);
            x = rib.phi(x);
        }
        paths[b] = if h % 2 == 0 { reverse_darts(&walk) } else { walk };
        deleted[b] = true;
        order.push(b);
        let (keep, absorb) = if marked[fa] { (fa, fb) } else { (fb, fa) };
        parent[absorb] = keep;
    }
    for f in 0..face_count {
        let r = find(&mut parent, f);
        if !marked[r] {
            return Err(Error::Model("trigon left unmerged".into()));
        }
    }

    // Replace deleted branches inside deletion paths, latest first.
    for &b in order.iter().rev() {
        let mut out = Vec::new();
        for &d in &paths[b] {
            let c = d / 2;
            if deleted[c] {
                let sub = if d % 2 == 0 { paths[c].clone() } else { reverse_darts(&paths[c]) };
                out.extend(sub);
            } else {
                out.push(d);
            }
        }
        if out.iter().any(|d| deleted[d / 2]) {
            return Err(Error::Model("deletion paths do not resolve".into()));
        }
        paths[b] = out;
    }

    // Prune leaves.
    let n_sw = switches.len();
    let mut degree = vec![0usize; n_sw];
    for b in 0..branch_count {
        if !deleted[b] {
            degree[rib.switch_of[2 * b]] += 1;
            degree[rib.switch_of[2 * b + 1]] += 1;
        }
    }
    let mut pruned = vec![false; branch_count];
    let mut pos_parent: Vec<usize> = (0..n_sw).collect();
    let alive = |b: usize, deleted: &[bool], pruned: &[bool]| !deleted[b] && !pruned[b];
    let mut stack: Vec<usize> = (0..n_sw).filter(|&s| degree[s] == 1).collect();
    while let Some(w) = stack.pop() {
        if degree[w] != 1 {
            continue;
        }
        let s = &switches[w];
        let h = [s.large, s.small_left, s.small_right]
            .into_iter()
            .find(|h| alive(h.branch, &deleted, &pruned))
            .ok_or_else(|| Error::Model("leaf without branch".into()))?;
        pruned[h.branch] = true;
        let u = rib.switch_of[h.other().dart()];
        degree[w] -= 1;
        degree[u] -= 1;
        let (rw, ru) = (find(&mut pos_parent, w), find(&mut pos_parent, u));
        pos_parent[rw] = ru;
        if degree[u] == 1 {
            stack.push(u);
        }
    }
    if degree.contains(&0) {
        return Err(Error::Model("isolated switch after pruning".into()));
    }

    // Chains between trivalent switches become spine edges.
    let vertex_of_switch: Vec<Option<usize>> = {
        let mut k = 0;
        degree
            .iter()
            .map(|&d| {
                if d == 3 {
                    k += 1;
                    Some(k - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let mut side_of_dart = vec![usize::MAX; 2 * branch_count];
    let mut spine_path: Vec<Option<Vec<usize>>> = vec![None; branch_count];
    let mut edges = 0usize;
    for v in 0..n_sw {
        if vertex_of_switch[v].is_none() {
            continue;
        }
        let s = &switches[v];
        for h in [s.large, s.small_right, s.small_left] {
            if !alive(h.branch, &deleted, &pruned) || spine_path[h.branch].is_some() {
                continue;
            }
            let e = edges;
            edges += 1;
            let mut d = h.dart();
            let mut first = true;
            let end_dart;
            let mut interior = Vec::new();
            loop {
                let b = d / 2;
                spine_path[b] = Some(if first {
                    vec![if d % 2 == 0 { 2 * e } else { 2 * e + 1 }]
                } else {
                    Vec::new()
                });
                first = false;
                let w = rib.switch_of[d ^ 1];
                if vertex_of_switch[w].is_some() {
                    end_dart = d ^ 1;
                    break;
                }
                interior.push(w);
                let sw = &switches[w];
                d = [sw.large, sw.small_left, sw.small_right]
                    .into_iter()
                    .map(|x| x.dart())
                    .find(|&x| x != (d ^ 1) && alive(x / 2, &deleted, &pruned))
                    .ok_or_else(|| Error::Model("broken chain".into()))?;
            }
            side_of_dart[h.dart()] = 2 * e;
            side_of_dart[end_dart] = 2 * e + 1;
            let w_end = rib.switch_of[end_dart];
            for w in interior {
                let (a, c) = (find(&mut pos_parent, w), find(&mut pos_parent, w_end));
                pos_parent[a] = c;
            }
        }
    }

    // Positions: every switch sits at the triangle of the vertex in its class.
    let mut class_vertex: HashMap<usize, usize> = HashMap::new();
    for s in 0..n_sw {
        if let Some(v) = vertex_of_switch[s] {
            let r = find(&mut pos_parent, s);
            if class_vertex.insert(r, v).is_some() {
                return Err(Error::Model("two vertices share a position".into()));
            }
        }
    }
    let mut switch_triangle = vec![0usize; n_sw];
    for s in 0..n_sw {
        let r = find(&mut pos_parent, s);
        switch_triangle[s] = *class_vertex
            .get(&r)
            .ok_or_else(|| Error::Model(format!("switch {s} has no position")))?;
    }

    // Triangles: counter-clockwise order at each trivalent switch.
    let mut triangles = Vec::new();
    for v in 0..n_sw {
        if vertex_of_switch[v].is_some() {
            let s = &switches[v];
            triangles.push([s.large, s.small_right, s.small_left].map(|h| side_of_dart[h.dart()]));
        }
    }
    if triangles.iter().flatten().any(|&x| x == usize::MAX) {
        return Err(Error::Model("unassigned spine side".into()));
    }
    let mut dart_of_side = vec![usize::MAX; 2 * edges];
    for (d, &s) in side_of_dart.iter().enumerate() {
        if s != usize::MAX {
            dart_of_side[s] = d;
        }
    }

    // Corner labels: the corner (s, next s) lies in the face right of next(s).
    let provisional = Triangulation::from_parts(surface, triangles.clone(), vec![0; 2 * edges]);
    let mut corner_vertex = vec![usize::MAX; 2 * edges];
    for s in 0..2 * edges {
        let n = provisional.next(s);
        let f = find(&mut parent, face[dart_of_side[n]]);
        corner_vertex[s] = face_puncture[f];
    }
    if corner_vertex.contains(&usize::MAX) {
        return Err(Error::Model("corner without puncture".into()));
    }
    let tri = Triangulation::from_parts(surface, triangles, corner_vertex);

    // Final branch paths in the spine.
    let mut branch_paths = vec![Vec::new(); branch_count];
    for b in 0..branch_count {
        branch_paths[b] = if deleted[b] {
            let mut out = Vec::new();
            for &d in &paths[b] {
                let c = d / 2;
                let p = spine_path[c].as_ref().map_or(&[][..], |p| p.as_slice());
                if d % 2 == 0 {
                    out.extend_from_slice(p);
                } else {
                    out.extend(reverse_darts(p));
                }
            }
            reduce_path(&out)
        } else {
            spine_path[b].clone().unwrap_or_default()
        };
    }

    let chart = Chart { triangulation: Arc::new(tri), branch_paths, switch_triangle };
    chart.check(&rib)?;
    if !chart.triangulation.check_counts() {
        return Err(Error::Model("Euler counts fail".into()));
    }
    check_vertex_links(&chart.triangulation)?;
    Ok(chart)
}

/// Each ideal vertex must be a single cycle of corners.
fn check_vertex_links(tri: &Triangulation) -> Result<()> {
    let n = tri.side_count();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let v = tri.corner_vertex(s);
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            if tri.corner_vertex(x) != v {
                return Err(Error::Model("corner labels disagree around a vertex".into()));
            }
            // corner (x, next x) continues across next(x) into its mate
            x = tri.next(x) ^ 1;
        }
    }
    if cycles != tri.vertex_count() {
        return Err(Error::Model(format!("{cycles} vertex links for {} vertices", tri.vertex_count())));
    }
    Ok(())
}

impl Chart {
    fn check(&self, rib: &Ribbon) -> Result<()> {
        let tri = &self.triangulation;
        for (b, p) in self.branch_paths.iter().enumerate() {
            let from = self.switch_triangle[rib.switch_of[2 * b]];
            let to = self.switch_triangle[rib.switch_of[2 * b + 1]];
            let mut at = from;
            for &s in p {
                if tri.triangle_of(s) != at {
                    return Err(Error::Model(format!("path of branch {b} is broken")));
                }
                at = tri.triangle_of(s ^ 1);
            }
            if at != to {
                return Err(Error::Model(format!("path of branch {b} ends in the wrong place")));
            }
        }
        Ok(())
    }
}

fn cache() -> &'static Mutex<HashMap<Surface, Arc<(TrackModel, Chart)>>> {
    static CACHE: OnceLock<Mutex<HashMap<Surface, Arc<(TrackModel, Chart)>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The standard track model together with its derived chart. Deterministic;
/// memoized per surface.
pub fn standard_chart(surface: Surface) -> Result<Arc<(TrackModel, Chart)>> {
    if let Some(c) = cache().lock().unwrap().get(&surface) {
        return Ok(c.clone());
    }
    let model = standard_model(surface)?;
    let chart = derive_chart(surface, &model.switches, model.branch_count, &model.puncture_halves)?;
    let entry = Arc::new((model, chart));
    cache().lock().unwrap().insert(surface, entry.clone());
    Ok(entry)
}

/// The reference triangulation of a surface.
pub fn reference_triangulation(surface: Surface) -> Result<Arc<Triangulation>> {
    Ok(standard_chart(surface)?.1.triangulation.clone())
}
