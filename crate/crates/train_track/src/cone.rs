//! The cone of transverse measures and its extreme rays.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use surface_curves::Traversal;

use crate::carried::measure_to_multicurve;
use crate::error::{Result, TrackError};
use crate::track::TrainTrack;

/// A primitive integral measure spanning an extreme ray, with the single
/// curve it carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCycle {
    pub measure: Vec<i128>,
    pub curve: Vec<Traversal>,
}

fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    v
}

/// Row-reduces a copy of `rows` (fraction-free) and returns the reduced rows
/// with their pivot columns.
fn echelon(rows: &[Vec<i128>], cols: &[usize]) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols.len() {
        let Some(p) = (row..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(row, p);
        for r in 0..m.len() {
            if r != row && m[r][c] != 0 {
                let (a, b) = (m[row][c], m[r][c]);
                for k in 0..cols.len() {
                    m[r][k] = a * m[r][k] - b * m[row][k];
                }
                let g = m[r].iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

fn widen(a: &[Vec<i64>]) -> Vec<Vec<i128>> {
    a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// Dimension of the linear space cut out by the switch conditions.
pub fn cone_dimension(t: &TrainTrack) -> usize {
    let cols: Vec<usize> = (0..t.branch_count()).collect();
    let (_, pivots) = echelon(&widen(&t.switch_matrix()), &cols);
    t.branch_count() - pivots.len()
}

type Mask = u128;

fn zero_mask(v: &[i128]) -> Mask {
    v.iter().enumerate().filter(|(_, &x)| x == 0).fold(0, |m, (i, _)| m | (1 << i))
}

/// Extreme rays of `{x >= 0 : A x = 0}` by double description, each as a
/// primitive integral vector, sorted.
pub fn extreme_rays(a: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i128>>> {
    if n > 128 {
        return Err(TrackError::InvalidTrack(vec!["more than 128 branches".into()]));
    }
    let mut rays: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    for row in widen(a) {
        let vals: Vec<i128> = rays.iter().map(|r| r.iter().zip(&row).map(|(x, y)| x * y).sum()).collect();
        let masks: Vec<Mask> = rays.iter().map(|r| zero_mask(r)).collect();
        let mut next: Vec<Vec<i128>> =
            rays.iter().zip(&vals).filter(|(_, &v)| v == 0).map(|(r, _)| r.clone()).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        for &p in &pos {
            for &q in &neg {
                let common = masks[p] & masks[q];
                let blocked = (0..rays.len()).any(|r| r != p && r != q && masks[r] & common == common);
                if blocked {
                    continue;
                }
                let (vp, vq) = (vals[p], -vals[q]);
                let mut combo = Vec::with_capacity(n);
                for k in 0..n {
                    let x = vq
                        .checked_mul(rays[p][k])
                        .and_then(|x| vp.checked_mul(rays[q][k]).and_then(|y| x.checked_add(y)))
                        .ok_or(TrackError::Overflow("extreme rays"))?;
                    combo.push(x);
                }
                next.push(primitive(combo));
            }
        }
        rays = next;
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}

/// Extreme rays found by trying every support: a support is a ray exactly
/// when its columns have a one-dimensional kernel spanned by a vector
/// positive on the whole support. Exponential; an independent check.
pub fn extreme_rays_by_supports(a: &[Vec<i64>], n: usize) -> Vec<Vec<i128>> {
    let rows = widen(a);
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let cols: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let (m, pivots) = echelon(&rows, &cols);
        if cols.len() - pivots.len() != 1 {
            continue;
        }
        let free = (0..cols.len()).find(|c| !pivots.contains(c)).unwrap();
        // kernel vector: free column gets the lcm-scaled value
        let l = m.iter().zip(&pivots).fold(1i128, |l, (r, &p)| l.lcm(&r[p]));
        let mut v = vec![0i128; cols.len()];
        v[free] = l;
        for (r, &p) in m.iter().zip(&pivots) {
            v[p] = -r[free] * (l / r[p]);
        }
        let sign = v[free].signum();
        if v.iter().any(|&x| x * sign <= 0) {
            continue;
        }
        let mut full = vec![0i128; n];
        for (k, &c) in cols.iter().enumerate() {
            full[c] = v[k] * sign;
        }
        out.push(primitive(full));
    }
    out.sort();
    out
}

/// Does the cone contain a measure positive on every branch?
pub fn is_recurrent(t: &TrainTrack) -> Result<bool> {
    let rays = extreme_rays(&t.switch_matrix(), t.branch_count())?;
    Ok((0..t.branch_count()).all(|b| rays.iter().any(|r| r[b] > 0)))
}

/// All vertex cycles with their carried curves.
pub fn vertex_cycles(t: &TrainTrack) -> Result<Vec<VertexCycle>> {
    let rays = extreme_rays(&t.switch_matrix(), t.branch_count())?;
    if !(0..t.branch_count()).all(|b| rays.iter().any(|r| r[b] > 0)) {
        return Err(TrackError::NotRecurrent);
    }
    rays.into_iter()
        .map(|measure| {
            let carried = measure_to_multicurve(t, &measure)?;
            match carried.components.as_slice() {
                [(word, 1)] => Ok(VertexCycle { curve: word.clone(), measure }),
                _ => Err(TrackError::NotAMeasure(format!(
                    "extreme ray {measure:?} carries {} components",
                    carried.components.len()
                ))),
            }
        })
        .collect()
}

/// Does a nonzero measure span an extreme ray? True exactly when the switch
/// conditions restricted to its support have a one-dimensional kernel.
pub fn is_extreme(t: &TrainTrack, mu: &[i128]) -> bool {
    let cols: Vec<usize> = (0..mu.len()).filter(|&b| mu[b] > 0).collect();
    if cols.is_empty() || !t.satisfies_switch_conditions(mu) {
        return false;
    }
    let (_, pivots) = echelon(&widen(&t.switch_matrix()), &cols);
    cols.len() - pivots.len() == 1
}
