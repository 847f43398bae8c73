//! Left and right splits at a large branch.
//!
//! Around a large branch `e` the four neighbouring halves are named by
//! compass point: `e` runs west to east from its end-0 switch to its end-1
//! switch, so the small halves at the west switch are NW (small right) and
//! SW (small left), those at the east switch NE (small left) and SE (small
//! right).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use surface_curves::words::{reduce_path, reverse_path};
use surface_curves::{Half, SwitchHalves};
use train_track::{EmbeddedTrack, RegionInfo, TrainTrack};

use crate::error::{Result, SplitError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Split {
    pub branch: usize,
    #[serde(rename = "dir")]
    pub direction: Direction,
}

/// Nonnegative matrix taking measures on the split track to measures on the
/// original: `before = M * after`.
pub type Transition = Vec<Vec<i64>>;

struct Square {
    west: usize,
    east: usize,
    nw: Half,
    sw: Half,
    ne: Half,
    se: Half,
}

fn square(t: &TrainTrack, e: usize) -> Result<Square> {
    let at = t.switch_of_darts();
    let (Some(west), Some(east)) = (at.get(2 * e).copied().flatten(), at.get(2 * e + 1).copied().flatten()) else {
        return Err(SplitError::NotLargeBranch(e));
    };
    let (w, x) = (t.switches[west], t.switches[east]);
    if west == east || w.large != Half::new(e, 0) || x.large != Half::new(e, 1) {
        return Err(SplitError::NotLargeBranch(e));
    }
    Ok(Square { west, east, nw: w.small_right, sw: w.small_left, ne: x.small_left, se: x.small_right })
}

/// Branches both of whose halves are large, at two distinct switches.
pub fn large_branches(t: &TrainTrack) -> Vec<usize> {
    (0..t.branch_count()).filter(|&e| square(t, e).is_ok()).collect()
}

fn check_measure(t: &TrainTrack, mu: &[i128]) -> Result<()> {
    if !t.satisfies_switch_conditions(mu) {
        return Err(SplitError::NotAMeasure(format!("{mu:?} fails the switch conditions")));
    }
    Ok(())
}

/// Directions whose split still carries `mu`.
pub fn admissible_directions(t: &TrainTrack, e: usize, mu: &[i128]) -> Result<Vec<Direction>> {
    let sq = square(t, e)?;
    check_measure(t, mu)?;
    let (ne, nw) = (mu[sq.ne.branch], mu[sq.nw.branch]);
    let mut dirs = Vec::new();
    if ne >= nw {
        dirs.push(Direction::Left);
    }
    if nw >= ne {
        dirs.push(Direction::Right);
    }
    Ok(dirs)
}

/// The measure on the split track that pushes forward to `mu`.
pub fn lift_measure(t: &TrainTrack, s: Split, mu: &[i128]) -> Result<Vec<i128>> {
    if !admissible_directions(t, s.branch, mu)?.contains(&s.direction) {
        return Err(SplitError::NotAMeasure(format!("{:?} split at {} does not carry it", s.direction, s.branch)));
    }
    let sq = square(t, s.branch)?;
    let mut out = mu.to_vec();
    out[s.branch] = (mu[sq.ne.branch] - mu[sq.nw.branch]).abs();
    Ok(out)
}

/// Splits `t` at the large branch `e`.
pub fn split(t: &TrainTrack, e: usize, direction: Direction) -> Result<(TrainTrack, Transition)> {
    let sq = square(t, e)?;
    let (w0, w1) = (Half::new(e, 0), Half::new(e, 1));
    let (west, east, extra) = match direction {
        Direction::Left => (
            SwitchHalves { large: sq.sw, small_left: w0, small_right: sq.se },
            SwitchHalves { large: sq.ne, small_left: w1, small_right: sq.nw },
            [sq.nw.branch, sq.se.branch],
        ),
        Direction::Right => (
            SwitchHalves { large: sq.nw, small_left: sq.ne, small_right: w0 },
            SwitchHalves { large: sq.se, small_left: sq.sw, small_right: w1 },
            [sq.sw.branch, sq.ne.branch],
        ),
    };
    let mut out = t.clone();
    out.switches[sq.west] = west;
    out.switches[sq.east] = east;
    out.regions = inherit_regions(t, &out, e)?;

    let n = t.branch_count();
    let mut m: Transition = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for b in extra {
        m[e][b] += 1;
    }
    Ok((out, m))
}

/// Regions of the split track: every face walk keeps the region of the
/// branch sides it runs along, except along the split branch itself.
fn inherit_regions(old: &TrainTrack, new: &TrainTrack, e: usize) -> Result<Vec<RegionInfo>> {
    let mut region_of = vec![usize::MAX; 2 * old.branch_count()];
    for (r, reg) in old.regions.iter().enumerate() {
        for &d in reg.boundary.iter().flatten() {
            region_of[d] = r;
        }
    }
    let mut walks: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for w in new.face_walks() {
        let mut owners = w.iter().filter(|&&d| d / 2 != e).map(|&d| region_of[d]);
        let Some(r) = owners.next() else {
            return Err(SplitError::Track(train_track::TrackError::InvalidTrack(vec![format!(
                "face walk {w:?} runs only along the split branch"
            )])));
        };
        if r == usize::MAX || owners.any(|o| o != r) {
            return Err(SplitError::Track(train_track::TrackError::InvalidTrack(vec![format!(
                "face walk {w:?} straddles regions"
            )])));
        }
        walks.entry(r).or_default().push(w);
    }
    old.regions
        .iter()
        .enumerate()
        .map(|(r, reg)| {
            let boundary = walks.remove(&r).unwrap_or_default();
            let cusps = boundary.iter().map(|w| new.cusps_on(w)).sum();
            if boundary.len() != reg.boundary.len() {
                return Err(SplitError::Track(train_track::TrackError::InvalidTrack(vec![format!(
                    "region {r} changed its number of boundary walks"
                )])));
            }
            Ok(RegionInfo { boundary, cusps, genus: reg.genus, punctures: reg.punctures })
        })
        .collect()
}

/// Moves one end of `paths[h.branch]` along `via`, a path from the switch it
/// leaves to the switch it joins.
fn drag(paths: &mut [Vec<usize>], h: Half, via: &[usize]) {
    let p = &mut paths[h.branch];
    let joined = if h.end == 1 {
        p.iter().chain(via).copied().collect::<Vec<_>>()
    } else {
        reverse_path(via).iter().chain(p.iter()).copied().collect()
    };
    *p = reduce_path(&joined);
}

/// Splits an embedded track, carrying the chart paths along.
pub fn split_embedded(t: &EmbeddedTrack, s: Split) -> Result<(EmbeddedTrack, Transition)> {
    let sq = square(&t.track, s.branch)?;
    let (track, m) = split(&t.track, s.branch, s.direction)?;
    let mut paths = t.paths.clone();
    let east = t.paths[s.branch].clone();
    let west = reverse_path(&east);
    match s.direction {
        Direction::Left => {
            drag(&mut paths, sq.nw, &east);
            drag(&mut paths, sq.se, &west);
        }
        Direction::Right => {
            drag(&mut paths, sq.ne, &west);
            drag(&mut paths, sq.sw, &east);
        }
    }
    Ok((EmbeddedTrack { track, paths, triangulation: t.triangulation.clone() }, m))
}
