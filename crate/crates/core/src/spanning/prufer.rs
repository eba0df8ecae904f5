use rand::Rng;

use super::tree::{Edge, SpanningTree};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_N: usize = 8;

/// Decodes a Prüfer sequence of length `n - 2`.
pub fn prufer_decode(n: usize, seq: &[usize]) -> SpanningTree {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push(Edge::new(leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push(Edge::new(rest[0], rest[1]));
    SpanningTree::new(n, edges).expect("Prüfer decoding yields a tree")
}

/// All `n^(n-2)` labelled trees on `n` vertices.
pub fn enumerate_spanning_trees(n: usize) -> Result<Vec<SpanningTree>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::Size(format!(
            "tree enumeration limited to n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    match n {
        0 => return Err(Error::Size("n must be positive".into())),
        1 => return Ok(vec![SpanningTree::new(1, [])?]),
        2 => return Ok(vec![SpanningTree::new(2, [Edge(0, 1)])?]),
        _ => {}
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for _ in 0..total {
        out.push(prufer_decode(n, &seq));
        for digit in seq.iter_mut().rev() {
            *digit += 1;
            if *digit < n {
                break;
            }
            *digit = 0;
        }
    }
    Ok(out)
}

/// Uniformly random labelled tree.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpanningTree {
    if n <= 2 {
        return SpanningTree::new(n, (n == 2).then_some(Edge(0, 1))).expect("trivial tree");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn cayley_counts() {
        assert_eq!(enumerate_spanning_trees(3).unwrap().len(), 3);
        assert_eq!(enumerate_spanning_trees(4).unwrap().len(), 16);
        let six = enumerate_spanning_trees(6).unwrap();
        assert_eq!(six.len(), 1296);
        let distinct: HashSet<_> = six.iter().collect();
        assert_eq!(distinct.len(), 1296);
    }

    #[test]
    fn too_large() {
        assert!(matches!(enumerate_spanning_trees(9), Err(Error::Size(_))));
    }
}
