use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Result, TrackError};
use crate::track::TrainTrack;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub switches: usize,
    pub branches: usize,
    pub regions: usize,
    pub trigons: usize,
    pub punctured_monogons: usize,
    pub complete: bool,
    pub cone_dimension: usize,
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..b.len()).any(|k| b[k..].iter().chain(&b[..k]).eq(a.iter())))
}

/// Checks genericity, region metadata against traced faces, cusp counts,
/// forbidden regions and the Euler count; reports completeness.
pub fn validate_track(t: &TrainTrack) -> Result<Diagnostics> {
    let mut bad = Vec::new();
    let nb = t.branches.len();
    for (b, pair) in t.branches.iter().enumerate() {
        if pair[0].branch != b || pair[1].branch != b || pair[0].end != 0 || pair[1].end != 1 {
            bad.push(format!("branch {b} does not own its two halves"));
        }
    }
    let mut uses = vec![0usize; 2 * nb];
    for (i, s) in t.switches.iter().enumerate() {
        for h in [s.large, s.small_left, s.small_right] {
            if h.branch >= nb || h.end > 1 {
                bad.push(format!("switch {i} refers to missing half {:?}", (h.branch, h.end)));
            } else {
                uses[h.dart()] += 1;
            }
        }
    }
    for (d, &u) in uses.iter().enumerate() {
        if u != 1 {
            bad.push(format!("half {:?} sits at {u} switch slots", (d / 2, d % 2)));
        }
    }
    if !bad.is_empty() {
        return Err(TrackError::InvalidTrack(bad));
    }

    let walks = t.face_walks();
    let mut walk_of = vec![usize::MAX; 2 * nb];
    for (k, w) in walks.iter().enumerate() {
        for &d in w {
            walk_of[d] = k;
        }
    }
    let mut claimed: HashMap<usize, usize> = HashMap::new();
    for (r, reg) in t.regions.iter().enumerate() {
        if reg.boundary.is_empty() {
            bad.push(format!("region {r} has no boundary"));
        }
        let mut cusps = 0;
        for w in &reg.boundary {
            let Some(&d) = w.first() else {
                bad.push(format!("region {r} has an empty walk"));
                continue;
            };
            if d >= 2 * nb || !same_cycle(w, &walks[walk_of[d]]) {
                bad.push(format!("region {r}: boundary {w:?} is not a face walk"));
                continue;
            }
            if let Some(prev) = claimed.insert(walk_of[d], r) {
                bad.push(format!("face walk {} claimed by regions {prev} and {r}", walk_of[d]));
            }
            cusps += t.cusps_on(w);
        }
        if cusps != reg.cusps {
            bad.push(format!("region {r}: declared {} cusps, traced {cusps}", reg.cusps));
        }
        if reg.double_index() >= 0 {
            bad.push(format!(
                "region {r} is forbidden (euler {}, {} cusps)",
                reg.euler(),
                reg.cusps
            ));
        }
    }
    if claimed.len() != walks.len() {
        bad.push(format!("{} of {} face walks unassigned", walks.len() - claimed.len(), walks.len()));
    }
    let total_cusps: usize = t.regions.iter().map(|r| r.cusps).sum();
    if total_cusps != t.switches.len() {
        bad.push(format!("{total_cusps} cusps for {} switches", t.switches.len()));
    }
    let punctures: u32 = t.regions.iter().map(|r| r.punctures).sum();
    if punctures != t.surface.punctures {
        bad.push(format!("regions hold {punctures} punctures, surface has {}", t.surface.punctures));
    }
    let euler: i64 = t.regions.iter().map(|r| r.euler()).sum::<i64>() + t.switches.len() as i64 - nb as i64;
    if euler != t.surface.euler_characteristic() {
        bad.push(format!("Euler count {euler} differs from {}", t.surface.euler_characteristic()));
    }
    if !bad.is_empty() {
        return Err(TrackError::InvalidTrack(bad));
    }

    let trigons = t.regions.iter().filter(|r| r.is_trigon()).count();
    let punctured_monogons = t.regions.iter().filter(|r| r.is_punctured_monogon()).count();
    let complete = trigons + punctured_monogons == t.regions.len();
    if complete {
        let (g, m) = (t.surface.genus as usize, t.surface.punctures as usize);
        if t.switches.len() + 12 != 12 * g + 4 * m || nb + 18 != 18 * g + 6 * m {
            return Err(TrackError::InvalidTrack(vec!["complete track with wrong counts".into()]));
        }
    }
    Ok(Diagnostics {
        switches: t.switches.len(),
        branches: nb,
        regions: t.regions.len(),
        trigons,
        punctured_monogons,
        complete,
        cone_dimension: crate::cone::cone_dimension(t),
    })
}
