use std::collections::VecDeque;
use std::fmt;

use crate::error::{param, Error, Result};

/// Undirected edge, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn has(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0, self.1)
    }
}

/// A spanning tree over vertices `0..n`, edges kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<Edge>,
}

impl SpanningTree {
    /// Validates: `n - 1` distinct in-range edges forming a connected graph.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge::new(e.0, e.1)).collect();
        edges.sort_unstable();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {n} vertices, need {}",
                edges.len(),
                n - 1
            )));
        }
        let mut dsu = Dsu::new(n);
        for e in &edges {
            if e.1 >= n {
                return Err(Error::InvalidTree(format!("edge ({e}) out of range for n = {n}")));
            }
            if e.0 == e.1 {
                return Err(Error::InvalidTree(format!("self-loop at {}", e.0)));
            }
            if !dsu.union(e.0, e.1) {
                return Err(Error::InvalidTree(format!("edge ({e}) closes a cycle")));
            }
        }
        Ok(SpanningTree { n, edges })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(a, b)| Edge::new(a, b)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&Edge::new(e.0, e.1)).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.has(v)).map(move |e| e.other(v))
    }

    /// Vertex path from `a` to `b` inclusive.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; self.n];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &y in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut out = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            out.push(x);
        }
        out.reverse();
        out
    }

    /// Side of each vertex after deleting tree edge `e`: `true` on `e.0`'s side.
    pub fn split(&self, e: Edge) -> Vec<bool> {
        let adj = self.adjacency();
        let mut side = vec![false; self.n];
        side[e.0] = true;
        let mut stack = vec![e.0];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !side[y] && !(x == e.0 && y == e.1) {
                    side[y] = true;
                    stack.push(y);
                }
            }
        }
        side
    }

    /// `self - remove + insert` without validation; callers guarantee treeness.
    pub(crate) fn exchanged(&self, remove: Edge, insert: Edge) -> SpanningTree {
        let mut edges: Vec<Edge> = self.edges.iter().copied().filter(|&e| e != remove).collect();
        edges.push(insert);
        edges.sort_unstable();
        SpanningTree { n: self.n, edges }
    }

    /// Parses the `"u v"` per-line format.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => edges.push(Edge::new(a, b)),
                _ => return Err(param(format!("bad edge line `{line}`"))),
            }
        }
        Self::new(n, edges)
    }
}

impl fmt::Display for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Union-find with path halving.
pub(super) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// The cycle closed by adding `e'` to the tree, from `e'.0` to `e'.1`.
pub fn fundamental_cycle(tree: &SpanningTree, inserted: Edge) -> Result<Vec<usize>> {
    let e = Edge::new(inserted.0, inserted.1);
    if e.0 == e.1 || e.1 >= tree.n() {
        return Err(param(format!("edge ({e}) is not a valid vertex pair")));
    }
    if tree.contains(e) {
        return Err(param(format!("edge ({e}) is already in the tree")));
    }
    Ok(tree.path(inserted.0, inserted.1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// Proper 2-colouring; vertex 0 is red.
pub fn two_coloring(tree: &SpanningTree) -> Vec<Color> {
    let adj = tree.adjacency();
    let mut color: Vec<Option<Color>> = vec![None; tree.n()];
    color[0] = Some(Color::Red);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let flip = match color[x] {
            Some(Color::Red) => Color::Blue,
            _ => Color::Red,
        };
        for &y in &adj[x] {
            if color[y].is_none() {
                color[y] = Some(flip);
                queue.push_back(y);
            }
        }
    }
    color.into_iter().map(|c| c.unwrap_or(Color::Red)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles_and_wrong_counts() {
        assert!(SpanningTree::from_pairs(3, &[(0, 1), (1, 2)]).is_ok());
        assert!(SpanningTree::from_pairs(3, &[(0, 1)]).is_err());
        assert!(SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(SpanningTree::from_pairs(3, &[(0, 1), (1, 5)]).is_err());
    }

    #[test]
    fn cycle_on_path_and_star() {
        let path = SpanningTree::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(fundamental_cycle(&path, Edge::new(0, 2)).unwrap(), vec![0, 1, 2]);
        let star = SpanningTree::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(fundamental_cycle(&star, Edge::new(1, 2)).unwrap(), vec![1, 0, 2]);
        assert!(fundamental_cycle(&star, Edge::new(0, 2)).is_err());
    }

    #[test]
    fn coloring_alternates() {
        use Color::*;
        let one = SpanningTree::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(two_coloring(&one), vec![Red, Blue]);
        let path = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(two_coloring(&path), vec![Red, Blue, Red, Blue]);
    }

    #[test]
    fn text_round_trip() {
        let t = SpanningTree::from_pairs(4, &[(2, 3), (1, 0), (0, 2)]).unwrap();
        let s = t.to_string();
        assert_eq!(s, "0 1\n0 2\n2 3\n");
        assert_eq!(SpanningTree::parse(4, &s).unwrap(), t);
        assert!(SpanningTree::parse(4, "0 x\n").is_err());
    }

    #[test]
    fn split_sides() {
        let path = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.split(Edge(1, 2)), vec![true, true, false, false]);
    }
}
