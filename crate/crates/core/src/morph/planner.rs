//! Morphing one tree into another across a single edge exchange.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use super::flip::{apply_rotation, apply_slide, Ord64};
use crate::error::{param, Result};
use crate::spanning::{fundamental_cycle, tree_length, Edge, PointConfig, SpanningTree};
use crate::trajectories::MorphMode;

/// Relative slack when comparing edge lengths.
const LENGTH_TOL: f64 = 1e-12;

/// Exchange of tree edge `removed` for non-tree edge `inserted`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapEvent {
    pub time: f64,
    pub old: SpanningTree,
    pub removed: Edge,
    pub inserted: Edge,
    /// Tree path from `inserted.0` to `inserted.1`.
    pub cycle: Vec<usize>,
}

impl SwapEvent {
    pub fn new(time: f64, old: SpanningTree, removed: Edge, inserted: Edge) -> Result<Self> {
        let removed = Edge::new(removed.0, removed.1);
        if !old.contains(removed) {
            return Err(param(format!("removed edge ({removed}) is not in the tree")));
        }
        let cycle = fundamental_cycle(&old, inserted)?;
        let on_cycle = cycle.windows(2).any(|w| Edge::new(w[0], w[1]) == removed);
        if !on_cycle {
            return Err(param(format!(
                "removed edge ({removed}) is not on the cycle of ({})",
                Edge::new(inserted.0, inserted.1)
            )));
        }
        Ok(SwapEvent { time, old, removed, inserted, cycle })
    }

    pub fn new_tree(&self) -> SpanningTree {
        self.old.exchanged(self.removed, Edge::new(self.inserted.0, self.inserted.1))
    }

    fn check_lengths(&self, cfg: &PointConfig) -> Result<()> {
        if cfg.n() != self.old.n() {
            return Err(param("configuration and tree disagree on n"));
        }
        let (e, f) = (self.removed, self.inserted);
        let (le, lf) = (cfg.dist(e.0, e.1), cfg.dist(f.0, f.1));
        if lf > le + LENGTH_TOL * le.max(1.0) {
            return Err(param(format!(
                "inserted edge ({}) is longer than removed edge ({e}): {lf} > {le}",
                Edge::new(f.0, f.1)
            )));
        }
        Ok(())
    }

    /// True when no edge of the cycle (inserted edge included) is longer than `removed`.
    pub fn removed_is_longest(&self, cfg: &PointConfig) -> bool {
        let le = cfg.dist(self.removed.0, self.removed.1);
        let tol = LENGTH_TOL * le.max(1.0);
        let f = self.inserted;
        cfg.dist(f.0, f.1) <= le + tol
            && self.cycle.windows(2).all(|w| cfg.dist(w[0], w[1]) <= le + tol)
    }
}

/// Replace edge `(kept, from)` by `(kept, to)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphStep {
    Slide { kept: usize, from: usize, to: usize },
    Rotate { kept: usize, from: usize, to: usize },
}

impl MorphStep {
    pub fn apply(&self, tree: &SpanningTree) -> Result<SpanningTree> {
        match *self {
            MorphStep::Slide { kept, from, to } => apply_slide(tree, kept, from, to),
            MorphStep::Rotate { kept, from, to } => apply_rotation(tree, kept, from, to),
        }
    }
}

impl fmt::Display for MorphStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MorphStep::Slide { kept, from, to } => write!(f, "slide {kept} {from} -> {to}"),
            MorphStep::Rotate { kept, from, to } => write!(f, "rotate {kept} {from} -> {to}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorphPlan {
    pub steps: Vec<MorphStep>,
    /// `steps.len() + 1` trees, from the old tree to the new one.
    pub trees: Vec<SpanningTree>,
    pub lengths: Vec<f64>,
    pub max_intermediate: f64,
    /// Set when the rotation planner had to fall back to slides.
    pub fallback: bool,
}

impl MorphPlan {
    fn build(old: &SpanningTree, steps: Vec<MorphStep>, cfg: &PointConfig) -> Result<Self> {
        let mut trees = vec![old.clone()];
        for s in &steps {
            let next = s.apply(trees.last().expect("non-empty"))?;
            trees.push(next);
        }
        let lengths = trees
            .iter()
            .map(|t| tree_length(cfg, t))
            .collect::<Result<Vec<_>>>()?;
        let max_intermediate = lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(MorphPlan { steps, trees, lengths, max_intermediate, fallback: false })
    }

    pub fn final_tree(&self) -> &SpanningTree {
        self.trees.last().expect("plans hold at least the old tree")
    }
}

impl fmt::Display for MorphPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        writeln!(f, "max_intermediate {}", self.max_intermediate)
    }
}

pub fn plan_morph(ev: &SwapEvent, cfg: &PointConfig, mode: MorphMode) -> Result<MorphPlan> {
    match mode {
        MorphMode::Slide => plan_slide_morph(ev, cfg),
        MorphMode::Rotation => plan_rotation_morph(ev, cfg),
    }
}

/// Slide-only morph with the smallest possible maximum tree length.
///
/// Removing `e` leaves components `A` and `B`; every tree reachable by
/// slides that keep exactly one edge across the cut is `old - e + (a, b)`
/// with `a` in `A`, `b` in `B`, and one slide moves `a` or `b` along a tree
/// edge. A minimax search over these bridge states covers sliding either
/// endpoint in either order as well as detours over side branches.
pub fn plan_slide_morph(ev: &SwapEvent, cfg: &PointConfig) -> Result<MorphPlan> {
    ev.check_lengths(cfg)?;
    let n = cfg.n();
    let old_len = tree_length(cfg, &ev.old)?;
    let e = ev.removed;
    let base = old_len - cfg.dist(e.0, e.1);
    let side = ev.old.split(e);
    let adj = ev.old.adjacency();
    let (a0, b0) = (e.0, e.1);
    let (at, bt) = if side[ev.inserted.0] {
        (ev.inserted.0, ev.inserted.1)
    } else {
        (ev.inserted.1, ev.inserted.0)
    };
    let state = |a: usize, b: usize| a * n + b;
    let mut best = vec![(f64::INFINITY, usize::MAX); n * n];
    let mut parent = vec![usize::MAX; n * n];
    let start = state(a0, b0);
    best[start] = (old_len, 0);
    parent[start] = start;
    let mut heap = BinaryHeap::from([Reverse((Ord64(old_len), 0usize, start))]);
    let goal = state(at, bt);
    while let Some(Reverse((Ord64(bound), steps, s))) = heap.pop() {
        if (bound, steps) > best[s] {
            continue;
        }
        if s == goal {
            break;
        }
        let (a, b) = (s / n, s % n);
        let moves = adj[a]
            .iter()
            .filter(|&&x| side[x])
            .map(|&x| (x, b))
            .chain(adj[b].iter().filter(|&&y| !side[y]).map(|&y| (a, y)));
        for (na, nb) in moves {
            let t = state(na, nb);
            let key = (bound.max(base + cfg.dist(na, nb)), steps + 1);
            if key < best[t] {
                best[t] = key;
                parent[t] = s;
                heap.push(Reverse((Ord64(key.0), key.1, t)));
            }
        }
    }
    let mut chain = vec![goal];
    let mut s = goal;
    while s != start {
        s = parent[s];
        chain.push(s);
    }
    chain.reverse();
    let steps = chain
        .windows(2)
        .map(|w| {
            let (a, b, na, nb) = (w[0] / n, w[0] % n, w[1] / n, w[1] % n);
            if a == na {
                MorphStep::Slide { kept: a, from: b, to: nb }
            } else {
                MorphStep::Slide { kept: b, from: a, to: na }
            }
        })
        .collect();
    MorphPlan::build(&ev.old, steps, cfg)
}

/// Rotation morph following the two-case construction: a short side of the
/// cycle allows a two-rotation detour through `(u, v')`; otherwise one of
/// four three-rotation detours through the midpoint edges of both sides is
/// taken, whichever has the shortest first edge.
///
/// Falls back to [`plan_slide_morph`] (and sets `fallback`) when `e` is not
/// the longest edge of the cycle.
pub fn plan_rotation_morph(ev: &SwapEvent, cfg: &PointConfig) -> Result<MorphPlan> {
    ev.check_lengths(cfg)?;
    if !ev.removed_is_longest(cfg) {
        let mut plan = plan_slide_morph(ev, cfg)?;
        plan.fallback = true;
        return Ok(plan);
    }
    let opt = tree_length(cfg, &ev.old)?;
    let c = &ev.cycle;
    let i = c
        .windows(2)
        .position(|w| Edge::new(w[0], w[1]) == ev.removed)
        .expect("removed edge lies on the cycle");
    let (u, v) = (c[i], c[i + 1]);
    let (u2, v2) = (c[0], *c.last().expect("cycle has two ends"));
    // left part: u back to u'; right part: v forward to v'
    let left: Vec<usize> = c[..=i].iter().rev().copied().collect();
    let right: Vec<usize> = c[i + 1..].to_vec();
    let path_len = |p: &[usize]| p.windows(2).map(|w| cfg.dist(w[0], w[1])).sum::<f64>();
    let (l_left, l_right) = (path_len(&left), path_len(&right));
    let rot = |kept, from, to| MorphStep::Rotate { kept, from, to };
    let raw = if l_right <= opt / 3.0 {
        vec![rot(u, v, v2), rot(v2, u, u2)]
    } else if l_left <= opt / 3.0 {
        vec![rot(v, u, u2), rot(u2, v, v2)]
    } else {
        let (ul, vl) = midpoint_edge(&left, l_left, cfg);
        let (ur, vr) = midpoint_edge(&right, l_right, cfg);
        let candidates = [
            (cfg.dist(u, vr), [rot(u, v, vr), rot(vr, u, u2), rot(u2, vr, v2)]),
            (cfg.dist(v, vl), [rot(v, u, vl), rot(vl, v, v2), rot(v2, vl, u2)]),
            (cfg.dist(u2, ur), [rot(u, v, ur), rot(ur, u, u2), rot(u2, ur, v2)]),
            (cfg.dist(v2, ul), [rot(v, u, ul), rot(ul, v, v2), rot(v2, ul, u2)]),
        ];
        let mut pick = 0;
        for (k, cand) in candidates.iter().enumerate() {
            if cand.0 < candidates[pick].0 {
                pick = k;
            }
        }
        candidates[pick].1.to_vec()
    };
    let steps = raw
        .into_iter()
        .filter(|s| !matches!(*s, MorphStep::Rotate { from, to, .. } if from == to))
        .collect();
    MorphPlan::build(&ev.old, steps, cfg)
}

/// First edge along `path` at which the running length reaches half the total.
fn midpoint_edge(path: &[usize], total: f64, cfg: &PointConfig) -> (usize, usize) {
    let mut acc = 0.0;
    for w in path.windows(2) {
        acc += cfg.dist(w[0], w[1]);
        if acc >= 0.5 * total {
            return (w[0], w[1]);
        }
    }
    let k = path.len();
    (path[k - 2], path[k - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn square() -> PointConfig {
        PointConfig::new(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn square_slide_plan() {
        let cfg = square();
        // three sides without the left one; swap the top side for the left side
        let old = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let ev = SwapEvent::new(0.0, old, Edge(2, 3), Edge(0, 3)).unwrap();
        let plan = plan_slide_morph(&ev, &cfg).unwrap();
        assert_eq!(plan.steps.len(), 2);
        assert_abs_diff_eq!(plan.max_intermediate, 2.0 + 2f64.sqrt(), epsilon = 1e-12);
        assert_eq!(plan.final_tree(), &ev.new_tree());
        let text = plan.to_string();
        assert!(text.starts_with("slide 3 2 -> 1\nslide 3 1 -> 0\nmax_intermediate "));
    }

    #[test]
    fn triangle_is_one_slide() {
        let cfg = PointConfig::new(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.2]]).unwrap();
        let old = SpanningTree::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let ev = SwapEvent::new(0.0, old, Edge(0, 1), Edge(0, 2)).unwrap();
        let plan = plan_slide_morph(&ev, &cfg).unwrap();
        assert_eq!(plan.steps.len(), 1);
        assert_abs_diff_eq!(plan.max_intermediate, tree_length(&cfg, &ev.old).unwrap());
    }

    #[test]
    fn invalid_events() {
        let old = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(SwapEvent::new(0.0, old.clone(), Edge(0, 2), Edge(0, 3)).is_err());
        assert!(SwapEvent::new(0.0, old.clone(), Edge(0, 1), Edge(1, 2)).is_err());
        assert!(SwapEvent::new(0.0, old.clone(), Edge(2, 3), Edge(0, 2)).is_err());
        // inserted longer than removed
        let cfg = square();
        let ev = SwapEvent::new(0.0, old, Edge(0, 1), Edge(0, 2)).unwrap();
        assert!(plan_slide_morph(&ev, &cfg).is_err());
    }

    #[test]
    fn rotation_short_side() {
        // u' = 0, u = 1, v = 2, v' = 3 with a short right part
        let cfg = PointConfig::new(&[vec![0.2, 0.0], vec![0.0, 1.0], vec![3.0, 1.0], vec![2.9, 0.1]])
            .unwrap();
        let old = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let ev = SwapEvent::new(0.0, old, Edge(1, 2), Edge(0, 3)).unwrap();
        let plan = plan_rotation_morph(&ev, &cfg).unwrap();
        assert!(!plan.fallback);
        assert_eq!(
            plan.steps,
            vec![
                MorphStep::Rotate { kept: 1, from: 2, to: 3 },
                MorphStep::Rotate { kept: 3, from: 1, to: 0 }
            ]
        );
        assert_eq!(plan.final_tree(), &ev.new_tree());
    }

    #[test]
    fn rotation_falls_back_when_not_longest() {
        let cfg = PointConfig::new(&[vec![0.0, 0.0], vec![5.0, 0.0], vec![5.0, 1.0], vec![0.0, 1.0]])
            .unwrap();
        let old = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let ev = SwapEvent::new(0.0, old, Edge(1, 2), Edge(0, 3)).unwrap();
        let plan = plan_rotation_morph(&ev, &cfg).unwrap();
        assert!(plan.fallback);
        assert_eq!(plan.final_tree(), &ev.new_tree());
    }
}
