//! Curves carried by a track, written as cyclic words of branch traversals.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use surface_curves::{Half, Traversal};

use crate::error::{Result, TrackError};
use crate::track::TrainTrack;

/// A carried multicurve: canonical cyclic words with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarriedCurve {
    pub components: Vec<(Vec<Traversal>, u64)>,
}

impl CarriedCurve {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

fn reversed(w: &[Traversal]) -> Vec<Traversal> {
    w.iter().rev().map(|t| t.reversed()).collect()
}

fn min_rotation(w: &[Traversal]) -> Vec<Traversal> {
    (0..w.len())
        .map(|k| w[k..].iter().chain(&w[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Least rotation over both orientations.
pub fn canonical_word(w: &[Traversal]) -> Vec<Traversal> {
    min_rotation(w).min(min_rotation(&reversed(w)))
}

/// Converts rational weights to integers, if they are integers.
pub fn integral_measure(weights: &[Ratio<i128>]) -> Result<Vec<i128>> {
    weights
        .iter()
        .map(|w| if w.is_integer() { Ok(w.to_integer()) } else { Err(TrackError::NonIntegral) })
        .collect()
}

fn check_measure(t: &TrainTrack, mu: &[i128]) -> Result<()> {
    if mu.len() != t.branch_count() {
        return Err(TrackError::NotAMeasure(format!("{} weights for {} branches", mu.len(), t.branch_count())));
    }
    if !t.satisfies_switch_conditions(mu) {
        return Err(TrackError::NotAMeasure("switch condition fails".into()));
    }
    Ok(())
}

/// Draws `mu(b)` parallel strands on each branch, joins them at switches
/// without crossings and reads off the closed curves.
pub fn measure_to_multicurve(t: &TrainTrack, mu: &[i128]) -> Result<CarriedCurve> {
    check_measure(t, mu)?;
    let nb = t.branch_count();
    // local order at a switch runs left to right facing the small side;
    // strand k on a branch is counted from the left travelling end 0 -> end 1
    let is_small = {
        let mut v = vec![false; 2 * nb];
        for s in &t.switches {
            v[s.small_left.dart()] = true;
            v[s.small_right.dart()] = true;
        }
        v
    };
    let local = |h: Half, k: i128| if (h.end == 0) == is_small[h.dart()] { k } else { mu[h.branch] - 1 - k };
    // partner[(dart, local index)] across the switch
    let mut partner: Vec<Vec<(Half, i128)>> = (0..2 * nb).map(|d| Vec::with_capacity(mu[d / 2] as usize)).collect();
    for s in &t.switches {
        let left = mu[s.small_left.branch];
        for j in 0..mu[s.large.branch] {
            let (h, k) = if j < left { (s.small_left, j) } else { (s.small_right, j - left) };
            partner[s.large.dart()].push((h, k));
        }
        for k in 0..left {
            partner[s.small_left.dart()].push((s.large, k));
        }
        for k in 0..mu[s.small_right.branch] {
            partner[s.small_right.dart()].push((s.large, left + k));
        }
    }

    let mut seen: Vec<Vec<bool>> = (0..nb).map(|b| vec![false; mu[b] as usize]).collect();
    let mut classes: BTreeMap<Vec<Traversal>, u64> = BTreeMap::new();
    for b in 0..nb {
        for k0 in 0..mu[b] {
            if seen[b][k0 as usize] {
                continue;
            }
            let mut word = Vec::new();
            let (mut branch, mut forward, mut k) = (b, true, k0);
            loop {
                seen[branch][k as usize] = true;
                word.push(Traversal { branch, forward });
                let arrive = Half::new(branch, forward as usize);
                let (h, j) = partner[arrive.dart()][local(arrive, k) as usize];
                // leave along h's branch from its end h.end
                let kk = if (h.end == 0) == is_small[h.dart()] { j } else { mu[h.branch] - 1 - j };
                branch = h.branch;
                forward = h.end == 0;
                k = kk;
                if branch == b && forward && k == k0 {
                    break;
                }
                if word.len() > 4 * mu.iter().sum::<i128>() as usize + 4 {
                    return Err(TrackError::NotAMeasure("strand does not close up".into()));
                }
            }
            *classes.entry(canonical_word(&word)).or_default() += 1;
        }
    }
    Ok(CarriedCurve { components: classes.into_iter().collect() })
}

/// Number of traversals of each branch by a carried closed path, after
/// checking that consecutive branches meet smoothly at a switch.
pub fn counting_measure(t: &TrainTrack, word: &[Traversal]) -> Result<Vec<i128>> {
    let nb = t.branch_count();
    let mut slot = vec![None; 2 * nb];
    for (i, s) in t.switches.iter().enumerate() {
        slot[s.large.dart()] = Some((i, true));
        slot[s.small_left.dart()] = Some((i, false));
        slot[s.small_right.dart()] = Some((i, false));
    }
    let mut mu = vec![0i128; nb];
    for (i, step) in word.iter().enumerate() {
        if step.branch >= nb {
            return Err(TrackError::IllegalPath(format!("branch {} out of range", step.branch)));
        }
        mu[step.branch] += 1;
        let next = word[(i + 1) % word.len()];
        let arrive = Half::new(step.branch, step.forward as usize);
        let leave = Half::new(next.branch, (!next.forward) as usize);
        match (slot[arrive.dart()], slot.get(leave.dart()).copied().flatten()) {
            (Some((s1, l1)), Some((s2, l2))) if s1 == s2 && l1 != l2 => {}
            _ => {
                return Err(TrackError::IllegalPath(format!(
                    "cannot pass from branch {} to branch {}",
                    step.branch, next.branch
                )))
            }
        }
    }
    Ok(mu)
}
