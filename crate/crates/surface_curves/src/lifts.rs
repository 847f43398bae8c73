//! Intersection numbers on punctured surfaces by counting linked pairs of
//! lifts of two cyclically reduced spine words.
//!
//! The dual graph of an ideal triangulation is a trivalent ribbon graph onto
//! which the surface retracts. Two lifts to the universal cover meet along a
//! finite common segment; they cross exactly when they enter that segment
//! from opposite sides and leave it to opposite sides.

use crate::triangulation::Triangulation;
use crate::words::reverse_path;

/// Number of crossings between the closed curves with words `a` and `b`
/// in minimal position. Both words must be primitive and cyclically reduced.
pub(crate) fn linked_pairs(tri: &Triangulation, a: &[usize], b: &[usize]) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let rb = reverse_path(b);
    count_oriented(tri, a, b) + count_oriented(tri, a, &rb)
}

fn count_oriented(tri: &Triangulation, a: &[usize], b: &[usize]) -> u64 {
    let (p, q) = (a.len(), b.len());
    let cap = p + q;
    let mut total = 0;
    for i in 0..p {
        for j in 0..q {
            if a[i] != b[j] || a[(i + p - 1) % p] == b[(j + q - 1) % q] {
                continue;
            }
            let mut k = 1;
            while k <= cap && a[(i + k) % p] == b[(j + k) % q] {
                k += 1;
            }
            if k > cap {
                // same axis
                continue;
            }
            let enter_left = tri.next(a[i]) == a[(i + p - 1) % p] ^ 1;
            let last = a[(i + k - 1) % p] ^ 1;
            let leave_right = tri.next(last) == a[(i + k) % p];
            if enter_left == leave_right {
                total += 1;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::reference_triangulation;
    use crate::surface::Surface;

    #[test]
    fn curve_with_itself_is_zero() {
        let t = reference_triangulation(Surface::new(0, 5).unwrap()).unwrap();
        for c in t.enumerate_curves(6) {
            let w = &c.components[0].word;
            assert_eq!(linked_pairs(&t, w, w), 0);
        }
    }
}
