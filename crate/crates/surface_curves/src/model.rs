//! The standard track model of a surface: one pants decomposition per
//! surface, a fixed track on each pair of pants and a twist connector around
//! each pants curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::Surface;

/// One end of a branch: `end` is 0 or 1. Serialized as `[branch, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Half {
    pub branch: usize,
    pub end: usize,
}

impl From<(usize, usize)> for Half {
    fn from((branch, end): (usize, usize)) -> Self {
        Half { branch, end }
    }
}

impl From<Half> for (usize, usize) {
    fn from(h: Half) -> Self {
        (h.branch, h.end)
    }
}

impl Half {
    pub fn new(branch: usize, end: usize) -> Self {
        Half { branch, end }
    }

    /// Dart index `2*branch + end`.
    pub fn dart(self) -> usize {
        2 * self.branch + self.end
    }

    pub fn from_dart(d: usize) -> Self {
        Half { branch: d / 2, end: d % 2 }
    }

    pub fn other(self) -> Self {
        Half { branch: self.branch, end: 1 - self.end }
    }
}

/// The three halves meeting at a trivalent switch. Counter-clockwise the
/// order is `large`, `small_right`, `small_left`; the cusp sits between the
/// two small halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchHalves {
    pub large: Half,
    #[serde(rename = "smallLeft")]
    pub small_left: Half,
    #[serde(rename = "smallRight")]
    pub small_right: Half,
}

/// A branch traversed in a direction; `forward` runs from end 0 to end 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Traversal {
    pub branch: usize,
    pub forward: bool,
}

impl Traversal {
    pub fn reversed(self) -> Self {
        Traversal { branch: self.branch, forward: !self.forward }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackModel {
    pub surface: Surface,
    pub switches: Vec<SwitchHalves>,
    pub branch_count: usize,
    /// For each puncture, an outgoing half whose right-hand face holds it.
    pub puncture_halves: Vec<Half>,
    /// Core of the twist connector of each pants curve, as a carried word.
    pub pants_cores: Vec<Vec<Traversal>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Curve(usize),
    Puncture(usize),
}

/// The pants of the standard decomposition, each as three boundary items.
fn pants_graph(surface: Surface) -> (Vec<[Item; 3]>, usize) {
    let (g, m) = (surface.genus as usize, surface.punctures as usize);
    let mut pants = Vec::new();
    let mut curves = 0;
    let mut boundary = Vec::new();
    for _ in 0..g {
        let handle = curves;
        let neck = curves + 1;
        curves += 2;
        pants.push([Item::Curve(handle), Item::Curve(handle), Item::Curve(neck)]);
        boundary.push(Item::Curve(neck));
    }
    boundary.extend((0..m).map(Item::Puncture));
    let n = boundary.len();
    if n == 2 {
        // Two necks glued to each other: rename the second neck to the first.
        if let (Item::Curve(a), Item::Curve(b)) = (boundary[0], boundary[1]) {
            for p in pants.iter_mut() {
                for it in p.iter_mut() {
                    if *it == Item::Curve(b) {
                        *it = Item::Curve(a);
                    }
                }
            }
            curves -= 1;
        }
    } else if n >= 3 {
        if n == 3 {
            pants.push([boundary[0], boundary[1], boundary[2]]);
        } else {
            let mut link = Item::Curve(curves);
            curves += 1;
            pants.push([boundary[0], boundary[1], link]);
            for b in &boundary[2..n - 2] {
                let next = Item::Curve(curves);
                curves += 1;
                pants.push([link, *b, next]);
                link = next;
            }
            pants.push([link, boundary[n - 2], boundary[n - 1]]);
        }
    }
    (pants, curves)
}

#[derive(Clone, Copy)]
enum Slot {
    Large,
    Left,
    Right,
}

struct Builder {
    switches: Vec<[Option<Half>; 3]>,
    branches: usize,
}

impl Builder {
    fn switch(&mut self) -> usize {
        self.switches.push([None; 3]);
        self.switches.len() - 1
    }

    fn attach(&mut self, (sw, slot): (usize, Slot), h: Half) {
        let k = match slot {
            Slot::Large => 0,
            Slot::Left => 1,
            Slot::Right => 2,
        };
        debug_assert!(self.switches[sw][k].is_none());
        self.switches[sw][k] = Some(h);
    }

    fn branch(&mut self, from: (usize, Slot), to: (usize, Slot)) -> usize {
        let b = self.branches;
        self.branches += 1;
        self.attach(from, Half::new(b, 0));
        self.attach(to, Half::new(b, 1));
        b
    }

    /// A dangling tail starting at `from`; its far end is attached later.
    fn tail(&mut self, from: (usize, Slot)) -> usize {
        let b = self.branches;
        self.branches += 1;
        self.attach(from, Half::new(b, 0));
        b
    }
}

/// Builds the standard complete track of a surface.
pub fn standard_model(surface: Surface) -> Result<TrackModel> {
    if surface.complexity() < 2 {
        return Err(Error::Exceptional { genus: surface.genus, punctures: surface.punctures });
    }
    let (pants, curve_count) = pants_graph(surface);
    let mut b = Builder { switches: Vec::new(), branches: 0 };

    // Twist connectors: tails[c] = [tail on the first side, tail on the second].
    let mut tails = Vec::with_capacity(curve_count);
    let mut cores = Vec::with_capacity(curve_count);
    for _ in 0..curve_count {
        let s1 = b.switch();
        let s2 = b.switch();
        let inner = b.branch((s1, Slot::Right), (s2, Slot::Right));
        let outer = b.branch((s2, Slot::Large), (s1, Slot::Large));
        let l = b.tail((s1, Slot::Left));
        let r = b.tail((s2, Slot::Left));
        tails.push([l, r]);
        cores.push(vec![
            Traversal { branch: inner, forward: true },
            Traversal { branch: outer, forward: true },
        ]);
    }

    let mut used = vec![0usize; curve_count];
    let mut punctures = vec![None; surface.punctures as usize];
    for p in &pants {
        let mut cuffs = Vec::new();
        let mut holes = Vec::new();
        for it in p {
            match *it {
                Item::Curve(c) => {
                    let t = tails[c][used[c]];
                    used[c] += 1;
                    cuffs.push(t);
                }
                Item::Puncture(q) => holes.push(q),
            }
        }
        match cuffs.len() {
            1 => {
                let u = b.switch();
                b.attach((u, Slot::Large), Half::new(cuffs[0], 1));
                b.branch((u, Slot::Left), (u, Slot::Right));
                let left = b.switches[u][1].unwrap();
                let right = b.switches[u][2].unwrap();
                punctures[holes[0]] = Some(left);
                punctures[holes[1]] = Some(right);
            }
            2 => {
                let u1 = b.switch();
                let u2 = b.switch();
                b.attach((u1, Slot::Large), Half::new(cuffs[0], 1));
                b.attach((u2, Slot::Right), Half::new(cuffs[1], 1));
                b.branch((u1, Slot::Left), (u2, Slot::Left));
                b.branch((u1, Slot::Right), (u2, Slot::Large));
                punctures[holes[0]] = Some(b.switches[u1][1].unwrap());
            }
            3 => {
                let u: Vec<usize> = (0..3).map(|_| b.switch()).collect();
                for (k, &sw) in u.iter().enumerate() {
                    b.attach((sw, Slot::Large), Half::new(cuffs[k], 1));
                }
                for k in 0..3 {
                    b.branch((u[k], Slot::Right), (u[(k + 1) % 3], Slot::Left));
                }
            }
            _ => return Err(Error::Model("pants with no cuff".into())),
        }
    }

    let mut switches = Vec::with_capacity(b.switches.len());
    for (i, s) in b.switches.iter().enumerate() {
        match s {
            [Some(l), Some(sl), Some(sr)] => {
                switches.push(SwitchHalves { large: *l, small_left: *sl, small_right: *sr })
            }
            _ => return Err(Error::Model(format!("switch {i} not trivalent"))),
        }
    }
    let puncture_halves = punctures
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Model("unplaced puncture".into()))?;
    Ok(TrackModel {
        surface,
        switches,
        branch_count: b.branches,
        puncture_halves,
        pants_cores: cores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        for (g, m) in [(0, 5), (1, 2), (2, 0), (0, 6), (1, 3), (2, 1), (3, 0), (0, 9)] {
            let s = Surface::new(g, m).unwrap();
            let t = standard_model(s).unwrap();
            let (g, m) = (g as usize, m as usize);
            assert_eq!(t.switches.len() + 12, 12 * g + 4 * m);
            assert_eq!(t.branch_count + 18, 18 * g + 6 * m);
            assert_eq!(t.pants_cores.len() as i64, s.complexity());
        }
    }
}
