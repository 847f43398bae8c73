use serde::{Deserialize, Serialize};
use surface_curves::{Half, Surface, SwitchHalves};

/// Complementary region data. Each boundary walk is a cyclic list of darts
/// (`2*branch + end`), each dart standing for the branch side to its right
/// when leaving the switch at that end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionInfo {
    pub boundary: Vec<Vec<usize>>,
    pub cusps: usize,
    pub genus: u32,
    pub punctures: u32,
}

impl RegionInfo {
    /// Euler characteristic of the open region.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64 - self.punctures as i64
    }

    /// Twice the index `euler - cusps/2`.
    pub fn double_index(&self) -> i64 {
        2 * self.euler() - self.cusps as i64
    }

    pub fn is_trigon(&self) -> bool {
        self.genus == 0 && self.punctures == 0 && self.boundary.len() == 1 && self.cusps == 3
    }

    pub fn is_punctured_monogon(&self) -> bool {
        self.genus == 0 && self.punctures == 1 && self.boundary.len() == 1 && self.cusps == 1
    }
}

/// A generic train track: trivalent switches, branches with two ends, and
/// complementary region metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainTrack {
    pub surface: Surface,
    pub switches: Vec<SwitchHalves>,
    pub branches: Vec<[Half; 2]>,
    pub regions: Vec<RegionInfo>,
}

impl TrainTrack {
    /// Builds a track whose regions are all planar, placing the listed
    /// punctures in the faces to the right of the given halves.
    pub fn with_punctures(surface: Surface, switches: Vec<SwitchHalves>, branch_count: usize, punctures: &[Half]) -> Self {
        let branches = (0..branch_count).map(|b| [Half::new(b, 0), Half::new(b, 1)]).collect();
        let mut t = TrainTrack { surface, switches, branches, regions: Vec::new() };
        let walks = t.face_walks();
        let mut face_of = vec![0; 2 * branch_count];
        for (f, w) in walks.iter().enumerate() {
            for &d in w {
                face_of[d] = f;
            }
        }
        let mut count = vec![0u32; walks.len()];
        for h in punctures {
            count[face_of[h.dart()]] += 1;
        }
        t.regions = walks
            .into_iter()
            .zip(count)
            .map(|(w, p)| {
                let cusps = t.cusps_on(&w);
                RegionInfo { boundary: vec![w], cusps, genus: 0, punctures: p }
            })
            .collect();
        t
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn switch_count(&self) -> usize {
        self.switches.len()
    }

    /// Switch at each dart, or `None` if a dart is unattached.
    pub fn switch_of_darts(&self) -> Vec<Option<usize>> {
        let mut of = vec![None; 2 * self.branches.len()];
        for (i, s) in self.switches.iter().enumerate() {
            for h in [s.large, s.small_left, s.small_right] {
                if let Some(slot) = of.get_mut(h.dart()) {
                    *slot = Some(i);
                }
            }
        }
        of
    }

    /// Counter-clockwise rotation of darts at their switch:
    /// large, small right, small left.
    pub fn rotation(&self) -> Vec<usize> {
        let mut sigma: Vec<usize> = (0..2 * self.branches.len()).collect();
        for s in &self.switches {
            let (l, r, sl) = (s.large.dart(), s.small_right.dart(), s.small_left.dart());
            sigma[l] = r;
            sigma[r] = sl;
            sigma[sl] = l;
        }
        sigma
    }

    /// Orbits of the face permutation `d -> rotation(d ^ 1)`.
    pub fn face_walks(&self) -> Vec<Vec<usize>> {
        let sigma = self.rotation();
        let n = sigma.len();
        let mut seen = vec![false; n];
        let mut walks = Vec::new();
        for d in 0..n {
            if seen[d] {
                continue;
            }
            let mut w = Vec::new();
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                w.push(x);
                x = sigma[x ^ 1];
            }
            walks.push(w);
        }
        walks
    }

    /// A cusp sits in the face of each switch's small-left dart.
    pub fn cusps_on(&self, walk: &[usize]) -> usize {
        let small_left: std::collections::HashSet<usize> =
            self.switches.iter().map(|s| s.small_left.dart()).collect();
        walk.iter().filter(|d| small_left.contains(d)).count()
    }

    /// Is the half on the large side of its switch?
    pub fn is_large_half(&self, h: Half) -> bool {
        self.switches.iter().any(|s| s.large == h)
    }

    /// Switch conditions as a matrix: row `s` is `+1` on the large branch and
    /// `-1` on each small branch (entries add up when a branch repeats).
    pub fn switch_matrix(&self) -> Vec<Vec<i64>> {
        self.switches
            .iter()
            .map(|s| {
                let mut row = vec![0i64; self.branches.len()];
                row[s.large.branch] += 1;
                row[s.small_left.branch] -= 1;
                row[s.small_right.branch] -= 1;
                row
            })
            .collect()
    }

    /// Does an integral weight vector satisfy every switch condition?
    pub fn satisfies_switch_conditions(&self, mu: &[i128]) -> bool {
        mu.len() == self.branches.len()
            && mu.iter().all(|&x| x >= 0)
            && self
                .switches
                .iter()
                .all(|s| mu[s.large.branch] == mu[s.small_left.branch] + mu[s.small_right.branch])
    }
}
