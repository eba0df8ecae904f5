use super::config::PointConfig;
use super::tree::{Dsu, Edge, SpanningTree};
use crate::error::{param, Result};

/// Minimum spanning tree under Euclidean weights.
///
/// Kruskal over edges ordered by `(length, u, v)`. Among all minimum trees
/// this returns the one whose sorted edge list is lexicographically smallest.
pub fn emst(cfg: &PointConfig) -> Result<SpanningTree> {
    let n = cfg.n();
    if n < 2 {
        return Err(param(format!("EMST needs n >= 2 points, got {n}")));
    }
    let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            cand.push((cfg.dist(u, v), u, v));
        }
    }
    cand.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut dsu = Dsu::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    for (_, u, v) in cand {
        if dsu.union(u, v) {
            edges.push(Edge(u, v));
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    SpanningTree::new(n, edges)
}

/// EMST length by dense O(n²) Prim.
pub fn emst_length(cfg: &PointConfig) -> f64 {
    let n = cfg.n();
    if n < 2 {
        return 0.0;
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || best[v] < best[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        total += best[u];
        for v in 0..n {
            if !in_tree[v] {
                let w = cfg.dist(u, v);
                if w < best[v] {
                    best[v] = w;
                }
            }
        }
    }
    total
}

pub fn tree_length(cfg: &PointConfig, tree: &SpanningTree) -> Result<f64> {
    if tree.n() != cfg.n() {
        return Err(param(format!(
            "tree has {} vertices but configuration has {} points",
            tree.n(),
            cfg.n()
        )));
    }
    Ok(edges_length(cfg, tree.edges()))
}

pub(crate) fn edges_length(cfg: &PointConfig, edges: &[Edge]) -> f64 {
    edges.iter().map(|e| cfg.dist(e.0, e.1)).sum()
}
