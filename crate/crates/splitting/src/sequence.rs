//! Splitting sequences: random ones for test data, and sequences guided by
//! an integral measure until its curve becomes a vertex cycle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use surface_curves::Surface;
use train_track::{is_extreme, measure_to_multicurve, vertex_cycles, EmbeddedTrack};

use crate::error::{Result, SplitError};
use crate::split::{admissible_directions, large_branches, lift_measure, split_embedded, Direction, Split, Transition};

#[derive(Clone, Debug)]
pub struct SplittingSequence {
    pub tracks: Vec<EmbeddedTrack>,
    pub moves: Vec<Split>,
    pub transitions: Vec<Transition>,
}

/// Reference to a base track that can be rebuilt from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseRef {
    pub surface: Surface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub base: BaseRef,
    pub moves: Vec<Split>,
}

impl SplittingSequence {
    pub fn new(base: EmbeddedTrack) -> Self {
        SplittingSequence { tracks: vec![base], moves: Vec::new(), transitions: Vec::new() }
    }

    /// Rebuilds the sequence from the standard track of the file's surface.
    pub fn from_file(f: &SequenceFile) -> Result<Self> {
        let mut seq = SplittingSequence::new(EmbeddedTrack::standard(f.base.surface)?);
        for &s in &f.moves {
            seq.push(s)?;
        }
        Ok(seq)
    }

    pub fn to_file(&self) -> SequenceFile {
        SequenceFile { base: BaseRef { surface: self.first().track.surface }, moves: self.moves.clone() }
    }

    /// Number of splits.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn first(&self) -> &EmbeddedTrack {
        &self.tracks[0]
    }

    pub fn last(&self) -> &EmbeddedTrack {
        self.tracks.last().unwrap()
    }

    pub fn push(&mut self, s: Split) -> Result<()> {
        let (next, m) = split_embedded(self.last(), s)?;
        self.tracks.push(next);
        self.moves.push(s);
        self.transitions.push(m);
        Ok(())
    }

    /// The part from track `from` to track `to`.
    pub fn slice(&self, from: usize, to: usize) -> SplittingSequence {
        SplittingSequence {
            tracks: self.tracks[from..=to].to_vec(),
            moves: self.moves[from..to].to_vec(),
            transitions: self.transitions[from..to].to_vec(),
        }
    }
}

fn apply(m: &Transition, mu: &[i128]) -> Result<Vec<i128>> {
    m.iter()
        .map(|row| {
            row.iter().zip(mu).try_fold(0i128, |acc, (&a, &x)| {
                (a as i128).checked_mul(x).and_then(|p| acc.checked_add(p))
            })
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| SplitError::NotAMeasure("overflow while transporting".into()))
}

/// Pushes a measure on the last track back to the first.
pub fn transport(seq: &SplittingSequence, mu: &[i128]) -> Result<Vec<i128>> {
    if !seq.last().track.satisfies_switch_conditions(mu) {
        return Err(SplitError::NotAMeasure(format!("{mu:?} is not a measure on the last track")));
    }
    seq.transitions.iter().rev().try_fold(mu.to_vec(), |v, m| apply(m, &v))
}

fn add_scaled(acc: &mut [i128], v: &[i128], k: i128) {
    acc.iter_mut().zip(v).for_each(|(x, y)| *x += k * y);
}

/// `n` splits, each at a uniformly random large branch, in the direction
/// that carries a fixed positive measure. Ties are broken by perturbing the
/// measure with random vertex cycles, so every track stays recurrent.
pub fn random_splitting_sequence(base: &EmbeddedTrack, n: usize, seed: u64) -> Result<SplittingSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq = SplittingSequence::new(base.clone());
    let random_cycle_sum = |t: &EmbeddedTrack, rng: &mut ChaCha8Rng| -> Result<Vec<i128>> {
        let mut mu = vec![0i128; t.track.branch_count()];
        for c in vertex_cycles(&t.track)? {
            add_scaled(&mut mu, &c.measure, rng.gen_range(1..=4));
        }
        Ok(mu)
    };
    let mut mu = random_cycle_sum(base, &mut rng)?;
    for _ in 0..n {
        let t = seq.last().track.clone();
        let large = large_branches(&t);
        if large.is_empty() {
            return Err(SplitError::NotLargeBranch(usize::MAX));
        }
        let e = large[rng.gen_range(0..large.len())];
        let mut dirs = admissible_directions(&t, e, &mu)?;
        while dirs.len() > 1 {
            let extra = random_cycle_sum(seq.last(), &mut rng)?;
            mu.iter_mut().for_each(|x| *x *= 2);
            add_scaled(&mut mu, &extra, 1);
            dirs = admissible_directions(&t, e, &mu)?;
        }
        let s = Split { branch: e, direction: dirs[0] };
        mu = lift_measure(&t, s, &mu)?;
        seq.push(s)?;
    }
    Ok(seq)
}

/// Step budget for guiding a measure that came out of `generation_length`
/// random splits.
pub fn step_cap(generation_length: usize) -> usize {
    50 * (generation_length + 1)
}

/// Splits along the curve of `mu` until it is a vertex cycle of the last
/// track. At each step the split that lowers the total weight the most is
/// taken among large branches of positive weight; ties go Right.
pub fn guided_splitting_sequence(base: &EmbeddedTrack, mu: &[i128], max_steps: usize) -> Result<SplittingSequence> {
    let carried = measure_to_multicurve(&base.track, mu).map_err(|e| SplitError::NotAMeasure(e.to_string()))?;
    if carried.components.len() != 1 {
        return Err(SplitError::NotAMeasure(format!("{} curves, expected one", carried.components.len())));
    }
    let mut seq = SplittingSequence::new(base.clone());
    let mut mu = mu.to_vec();
    while !is_extreme(&seq.last().track, &mu) {
        if seq.len() >= max_steps {
            return Err(SplitError::NoProgress(seq.len()));
        }
        let t = &seq.last().track;
        let mut best: Option<(i128, Split)> = None;
        for e in large_branches(t) {
            if mu[e] == 0 {
                continue;
            }
            let dirs = admissible_directions(t, e, &mu)?;
            let direction = if dirs.contains(&Direction::Right) { Direction::Right } else { Direction::Left };
            let s = Split { branch: e, direction };
            let drop = mu[e] - lift_measure(t, s, &mu)?[e];
            if best.is_none_or(|(d, _)| drop > d) {
                best = Some((drop, s));
            }
        }
        let Some((_, s)) = best else {
            return Err(SplitError::NoProgress(seq.len()));
        };
        mu = lift_measure(&seq.last().track, s, &mu)?;
        seq.push(s)?;
    }
    Ok(seq)
}
