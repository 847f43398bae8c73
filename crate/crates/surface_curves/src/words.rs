//! Paths in the spine, written as sequences of exited triangle sides.

/// Free reduction: drops every immediate backtrack `s, mate(s)`.
pub fn reduce_path(path: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(path.len());
    for &s in path {
        if out.last() == Some(&(s ^ 1)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Free and cyclic reduction of a closed path.
pub fn reduce_cyclic(path: &[usize]) -> Vec<usize> {
    let mut w = reduce_path(path);
    let mut start = 0;
    let mut end = w.len();
    while end - start >= 2 && w[end - 1] == (w[start] ^ 1) {
        start += 1;
        end -= 1;
    }
    w.truncate(end);
    w.drain(..start);
    w
}

pub fn reverse_path(path: &[usize]) -> Vec<usize> {
    path.iter().rev().map(|s| s ^ 1).collect()
}

fn min_rotation(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    (0..n)
        .map(|k| w[k..].iter().chain(&w[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Canonical representative of an unoriented cyclic word.
pub fn canonical_cyclic(w: &[usize]) -> Vec<usize> {
    let a = min_rotation(w);
    let b = min_rotation(&reverse_path(w));
    a.min(b)
}

/// Number of times the closed path crosses each edge.
pub fn crossing_counts(path: &[usize], edges: usize) -> Vec<u64> {
    let mut c = vec![0u64; edges];
    for &s in path {
        c[s / 2] += 1;
    }
    c
}

/// Smallest period of a cyclic word.
pub fn primitive_period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|i| w[i] == w[(i + p) % n])).unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        assert_eq!(reduce_path(&[0, 2, 3, 4]), vec![0, 4]);
        assert_eq!(reduce_cyclic(&[1, 2, 4, 0]), vec![2, 4]);
        assert_eq!(reduce_cyclic(&[1, 0]), Vec::<usize>::new());
    }

    #[test]
    fn canonical_is_rotation_and_reversal_invariant() {
        let w = [4, 8, 2, 10];
        let r = reverse_path(&w);
        assert_eq!(canonical_cyclic(&w), canonical_cyclic(&[2, 10, 4, 8]));
        assert_eq!(canonical_cyclic(&w), canonical_cyclic(&r));
    }
}
