//! Edge slides and rotations, and the explicit flip graph on small vertex sets.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::spanning::{enumerate_spanning_trees, Edge, SpanningTree, MAX_ENUMERATION_N};
use crate::trajectories::MorphMode;

/// `tree - (u, v) + (u, w)` where `w` is a tree neighbour of `v`.
pub fn apply_slide(tree: &SpanningTree, u: usize, v: usize, w: usize) -> Result<SpanningTree> {
    let moved = Edge::new(u, v);
    if !tree.contains(moved) {
        return Err(Error::InvalidSlide(format!("({moved}) is not a tree edge")));
    }
    if w == u || w >= tree.n() || !tree.contains(Edge::new(v, w)) {
        return Err(Error::InvalidSlide(format!("{w} is not a tree neighbour of {v} other than {u}")));
    }
    Ok(tree.exchanged(moved, Edge::new(u, w)))
}

/// `tree - (u, v) + (u, w)` for any `w` on `v`'s side of the cut; `w = v` is the identity.
pub fn apply_rotation(tree: &SpanningTree, u: usize, v: usize, w: usize) -> Result<SpanningTree> {
    let moved = Edge::new(u, v);
    if !tree.contains(moved) {
        return Err(Error::InvalidRotation(format!("({moved}) is not a tree edge")));
    }
    if w == v {
        return Ok(tree.clone());
    }
    if w == u || w >= tree.n() {
        return Err(Error::InvalidRotation(format!("cannot rotate ({moved}) onto {w}")));
    }
    let side = tree.split(moved);
    let u_side = side[u];
    if side[w] == u_side {
        return Err(Error::InvalidRotation(format!(
            "rotating ({moved}) onto {w} would disconnect the tree"
        )));
    }
    Ok(tree.exchanged(moved, Edge::new(u, w)))
}

/// Bit index of an edge in a tree mask (vertex stride 8, so `n <= 8`).
pub(crate) fn edge_bit(e: Edge) -> u64 {
    1u64 << (e.0 * 8 + e.1)
}

pub(crate) fn tree_mask(tree: &SpanningTree) -> u64 {
    tree.edges().iter().fold(0, |m, &e| m | edge_bit(e))
}

pub(crate) fn mask_edges(mask: u64) -> impl Iterator<Item = Edge> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(Edge(b / 8, b % 8))
    })
}

pub(crate) fn mask_tree(n: usize, mask: u64) -> SpanningTree {
    SpanningTree::new(n, mask_edges(mask)).expect("mask encodes a tree")
}

/// Calls `f` with the mask of every tree one flip away from `mask`.
pub(crate) fn for_each_flip(mask: u64, mode: MorphMode, mut f: impl FnMut(u64)) {
    let mut adj = [0u8; 8];
    for e in mask_edges(mask) {
        adj[e.0] |= 1 << e.1;
        adj[e.1] |= 1 << e.0;
    }
    for e in mask_edges(mask) {
        let base = mask & !edge_bit(e);
        for (kept, moving) in [(e.0, e.1), (e.1, e.0)] {
            let targets = match mode {
                MorphMode::Slide => adj[moving] & !(1 << kept),
                MorphMode::Rotation => side_of(&adj, moving, kept) & !(1 << moving),
            };
            let mut t = targets as u32;
            while t != 0 {
                let w = t.trailing_zeros() as usize;
                t &= t - 1;
                f(base | edge_bit(Edge::new(kept, w)));
            }
        }
    }
}

/// Vertices reachable from `start` without crossing the edge to `blocked`.
fn side_of(adj: &[u8; 8], start: usize, blocked: usize) -> u8 {
    let mut seen = 1u8 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let mut nb = adj[x];
        if x == start {
            nb &= !(1 << blocked);
        }
        let fresh = nb & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen
}

/// Every labelled tree on `n <= 8` vertices with its flip neighbours in CSR form.
pub struct FlipGraph {
    n: usize,
    mode: MorphMode,
    masks: Vec<u64>,
    index: HashMap<u64, u32>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl FlipGraph {
    pub fn build(n: usize, mode: MorphMode) -> Result<Self> {
        if !(2..=MAX_ENUMERATION_N).contains(&n) {
            return Err(Error::Size(format!(
                "flip graph needs 2 <= n <= {MAX_ENUMERATION_N}, got {n}"
            )));
        }
        let masks: Vec<u64> = enumerate_spanning_trees(n)?.iter().map(tree_mask).collect();
        let index: HashMap<u64, u32> =
            masks.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let mut offsets = Vec::with_capacity(masks.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &m in &masks {
            for_each_flip(m, mode, |nb| targets.push(index[&nb]));
            offsets.push(targets.len());
        }
        Ok(FlipGraph { n, mode, masks, index, offsets, targets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> MorphMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn tree(&self, i: usize) -> SpanningTree {
        mask_tree(self.n, self.masks[i])
    }

    pub fn index_of(&self, tree: &SpanningTree) -> Option<usize> {
        self.index.get(&tree_mask(tree)).map(|&i| i as usize)
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub(crate) fn edges_of(&self, i: usize) -> impl Iterator<Item = Edge> {
        mask_edges(self.masks[i])
    }

    /// Minimax path: the smallest achievable maximum of `weight` over the
    /// vertices of a path from any source to any target, and one such path.
    pub fn bottleneck_path(
        &self,
        weight: &[f64],
        sources: &[usize],
        is_target: impl Fn(usize) -> bool,
    ) -> Option<(f64, Vec<usize>)> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut label = vec![f64::INFINITY; self.len()];
        let mut parent = vec![u32::MAX; self.len()];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            label[s] = weight[s];
            parent[s] = s as u32;
            heap.push(Reverse((Ord64(weight[s]), s)));
        }
        while let Some(Reverse((Ord64(l), x))) = heap.pop() {
            if l > label[x] {
                continue;
            }
            if is_target(x) {
                let mut path = vec![x];
                let mut y = x;
                while parent[y] as usize != y {
                    y = parent[y] as usize;
                    path.push(y);
                }
                path.reverse();
                return Some((l, path));
            }
            for &y in self.neighbors(x) {
                let y = y as usize;
                let cand = l.max(weight[y]);
                if cand < label[y] {
                    label[y] = cand;
                    parent[y] = x as u32;
                    heap.push(Reverse((Ord64(cand), y)));
                }
            }
        }
        None
    }
}

/// Total order wrapper for heap keys.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Ord64(pub f64);

impl Eq for Ord64 {}

impl PartialOrd for Ord64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ord64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Fewest slides turning `a` into `b` (breadth-first, `n <= 8`).
pub fn slide_distance(a: &SpanningTree, b: &SpanningTree) -> Result<usize> {
    flip_distance(a, b, MorphMode::Slide)
}

pub fn flip_distance(a: &SpanningTree, b: &SpanningTree, mode: MorphMode) -> Result<usize> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::Parameter("trees on different vertex counts".into()));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::Size(format!("flip distance needs n <= {MAX_ENUMERATION_N}, got {n}")));
    }
    let (start, goal) = (tree_mask(a), tree_mask(b));
    let mut dist: HashMap<u64, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        let d = dist[&m];
        if m == goal {
            return Ok(d);
        }
        for_each_flip(m, mode, |nb| {
            dist.entry(nb).or_insert_with(|| {
                queue.push_back(nb);
                d + 1
            });
        });
    }
    unreachable!("flip graphs are connected")
}
