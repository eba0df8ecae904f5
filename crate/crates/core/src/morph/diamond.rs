//! Connector classes of the diamond construction and the search for a
//! cheap rotation path from a top-connected to a bottom-connected tree.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::SQRT_2;

use super::flip::Ord64;
use crate::error::{Error, Result};
use crate::spanning::{emst, emst_length, tree_length, Edge, PointConfig, SpanningTree};
use crate::trajectories::{gen_diamond_with, DiamondGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connector {
    /// Crosses the vertical diagonal strictly above the horizontal one.
    Top,
    /// Crosses the vertical diagonal strictly below the horizontal one.
    Bottom,
    /// Touches or crosses both diagonals.
    Cross,
    None,
}

/// Classifies a segment against the diagonals `x = 0` and `y = 0` of a
/// diamond centred at the origin.
pub fn classify_connector(a: &[f64], b: &[f64]) -> Connector {
    let meets_vertical = a[0] * b[0] <= 0.0;
    if !meets_vertical {
        return Connector::None;
    }
    if a[1] > 0.0 && b[1] > 0.0 {
        Connector::Top
    } else if a[1] < 0.0 && b[1] < 0.0 {
        Connector::Bottom
    } else {
        Connector::Cross
    }
}

pub fn classify_edge(cfg: &PointConfig, e: Edge) -> Connector {
    classify_connector(cfg.point(e.0), cfg.point(e.1))
}

/// Lower bound target of the construction in the continuum limit.
pub fn diamond_threshold() -> f64 {
    10.0 - 2.0 * SQRT_2
}

pub fn diamond_emst_length() -> f64 {
    9.0 - 2.0 * SQRT_2
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiamondCertificate {
    pub points_per_side: usize,
    /// Required bottleneck: `10 - 2 sqrt 2` less the tolerance.
    pub threshold: f64,
    pub opt_length: f64,
    pub start: SpanningTree,
    /// Least possible maximum tree length on a rotation path to a tree with
    /// a bottom connector, when it lies below the threshold.
    pub bottleneck: Option<f64>,
    pub witness: Vec<SpanningTree>,
    pub explored: usize,
}

impl DiamondCertificate {
    /// True when no path below the threshold exists.
    pub fn holds(&self) -> bool {
        self.bottleneck.is_none()
    }

    pub fn ratio(&self) -> f64 {
        self.bottleneck.unwrap_or(self.threshold) / self.opt_length
    }
}

/// State budget of the certificate search.
const MAX_STATES: usize = 20_000_000;

/// Minimax search over rotation paths at the critical configuration,
/// starting from the EMST (which holds the top connector `e`). Trees whose
/// length reaches the threshold are never expanded, so the search either
/// finds the cheapest path to a bottom-connected tree below the threshold or
/// exhausts everything below it.
pub fn diamond_certificate(points_per_side: usize, tol: f64) -> Result<DiamondCertificate> {
    let (sc, t_crit) = gen_diamond_with(points_per_side)?;
    let cfg = sc.config_at(t_crit)?;
    let geom = DiamondGeometry { points_per_side };
    let n = cfg.n();
    let threshold = diamond_threshold() - tol;
    let start = emst(&cfg)?;
    if !start.contains(geom.top_edge()) {
        return Err(Error::Precondition("critical EMST does not hold the top connector".into()));
    }
    let pair = |u: usize, v: usize| (u.min(v) * n + u.max(v)) as u16;
    let mut bottom = vec![false; n * n];
    for u in 0..n {
        for v in u + 1..n {
            bottom[pair(u, v) as usize] = classify_edge(&cfg, Edge(u, v)) == Connector::Bottom;
        }
    }
    let unpair = |p: u16| (p as usize / n, p as usize % n);
    let key_of = |t: &SpanningTree| -> Vec<u16> {
        let mut k: Vec<u16> = t.edges().iter().map(|e| pair(e.0, e.1)).collect();
        k.sort_unstable();
        k
    };

    let mut keys: Vec<Vec<u16>> = vec![key_of(&start)];
    let mut index: HashMap<Vec<u16>, u32> = HashMap::from([(keys[0].clone(), 0)]);
    let mut label = vec![tree_length(&cfg, &start)?];
    let mut lens = label.clone();
    let mut parent = vec![0u32];
    let mut heap = BinaryHeap::from([Reverse((Ord64(label[0]), 0u32))]);
    let mut found = None;
    let mut expanded = 0;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut side = vec![false; n];
    let mut stack = Vec::new();

    while let Some(Reverse((Ord64(l), x))) = heap.pop() {
        let x = x as usize;
        if l > label[x] {
            continue;
        }
        if keys[x].iter().any(|&p| bottom[p as usize]) {
            found = Some((l, x));
            break;
        }
        expanded += 1;
        let key = keys[x].clone();
        for a in adj.iter_mut() {
            a.clear();
        }
        for &p in &key {
            let (u, v) = unpair(p);
            adj[u].push(v);
            adj[v].push(u);
        }
        for (slot, &p) in key.iter().enumerate() {
            let (u, v) = unpair(p);
            let removed_len = cfg.dist(u, v);
            // component of v once (u, v) is cut
            side.iter_mut().for_each(|s| *s = false);
            side[v] = true;
            stack.clear();
            stack.push(v);
            while let Some(y) = stack.pop() {
                for &z in &adj[y] {
                    if !side[z] && !(y == v && z == u) {
                        side[z] = true;
                        stack.push(z);
                    }
                }
            }
            for (w, &near_u) in side.iter().enumerate() {
                // keep one endpoint, re-attach across the cut
                let (kept, far) = if near_u { (u, w) } else { (v, w) };
                if far == u || far == v {
                    continue;
                }
                let new_len = lens[x] - removed_len + cfg.dist(kept, far);
                if new_len >= threshold {
                    continue;
                }
                let cand = l.max(new_len);
                let mut nk = key.clone();
                nk.remove(slot);
                let np = pair(kept, far);
                let at = nk.binary_search(&np).unwrap_or_else(|i| i);
                nk.insert(at, np);
                match index.get(&nk) {
                    Some(&y) => {
                        let y = y as usize;
                        if cand < label[y] {
                            label[y] = cand;
                            parent[y] = x as u32;
                            heap.push(Reverse((Ord64(cand), y as u32)));
                        }
                    }
                    None => {
                        let y = keys.len();
                        if y >= MAX_STATES {
                            return Err(Error::Size(format!(
                                "diamond search exceeded {MAX_STATES} trees"
                            )));
                        }
                        index.insert(nk.clone(), y as u32);
                        keys.push(nk);
                        label.push(cand);
                        lens.push(new_len);
                        parent.push(x as u32);
                        heap.push(Reverse((Ord64(cand), y as u32)));
                    }
                }
            }
        }
    }

    let to_tree = |k: &[u16]| {
        SpanningTree::new(n, k.iter().map(|&p| {
            let (u, v) = unpair(p);
            Edge(u, v)
        }))
        .expect("search only visits trees")
    };
    let (bottleneck, witness) = match found {
        Some((value, mut x)) => {
            let mut path = vec![to_tree(&keys[x])];
            while x != 0 {
                x = parent[x] as usize;
                path.push(to_tree(&keys[x]));
            }
            path.reverse();
            (Some(value), path)
        }
        None => (None, Vec::new()),
    };
    Ok(DiamondCertificate {
        points_per_side,
        threshold,
        opt_length: emst_length(&cfg),
        start,
        bottleneck,
        witness,
        explored: expanded,
    })
}
