//! Simple undirected graphs on dense vertex ids, plus the tree constructions
//! used throughout the crate.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph not connected")]
    NotConnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is empty")]
    Empty,
    #[error("invalid subdivision set: {0}")]
    InvalidSubdivision(String),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An immutable simple graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted; adjacency lists are
/// sorted ascending. Every construction returns a fresh graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    nbr: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_sorted_edges(n, seen.into_iter().collect()))
    }

    fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut nbr = vec![VertexSet::new(n); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
            nbr[u].insert(v);
            nbr[v].insert(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Self { n, edges, adj, nbr }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_sorted_edges(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_sorted_edges(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.nbr[v]
    }

    /// `N[v]` as a set.
    pub fn closed_neighbor_set(&self, v: usize) -> VertexSet {
        let mut s = self.nbr[v].clone();
        s.insert(v);
        s
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.nbr[u].contains(v)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|a| a.is_empty())
    }

    /// Per-vertex neighbor masks for graphs on at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        self.nbr.iter().map(|s| s.as_mask()).collect()
    }

    /// Breadth-first distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        self.bfs(src).0
    }

    fn bfs(&self, src: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    pub fn require_tree(&self) -> Result<(), GraphError> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(GraphError::NotATree)
        }
    }

    pub fn leaves(&self) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.n, self.vertices().filter(|&v| self.degree(v) == 1))
    }

    /// Leaf neighbours of `v`, ascending.
    pub fn leaf_neighbors(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&w| self.degree(w) == 1).collect()
    }

    pub fn supports(&self) -> VertexSet {
        self.supports_with_at_least(1)
    }

    pub fn strong_supports(&self) -> VertexSet {
        self.supports_with_at_least(2)
    }

    fn supports_with_at_least(&self, k: usize) -> VertexSet {
        VertexSet::from_iter_with_capacity(
            self.n,
            self.vertices().filter(|&v| self.leaf_neighbors(v).len() >= k),
        )
    }

    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        Ok(self.longest_path()?.len() - 1)
    }

    /// One diametral path, as a vertex list from one end to the other.
    ///
    /// Trees use a double BFS (farthest vertex, lowest id on ties); other
    /// connected graphs fall back to BFS from every vertex.
    pub fn longest_path(&self) -> Result<Vec<usize>, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let farthest = |dist: &[usize]| {
            let mut best = 0;
            for v in 0..dist.len() {
                if dist[v] > dist[best] {
                    best = v;
                }
            }
            best
        };
        let (start, end, parent) = if self.is_tree() {
            let x = farthest(&self.bfs_distances(0));
            let (dist, parent) = self.bfs(x);
            (x, farthest(&dist), parent)
        } else {
            let mut best: Option<(usize, usize, usize, Vec<usize>)> = None;
            for s in self.vertices() {
                let (dist, parent) = self.bfs(s);
                let t = farthest(&dist);
                if best.as_ref().is_none_or(|b| dist[t] > b.0) {
                    best = Some((dist[t], s, t, parent));
                }
            }
            let (_, s, t, parent) = best.expect("nonempty graph");
            (s, t, parent)
        };
        let mut path = vec![end];
        let mut cur = end;
        while cur != start {
            cur = parent[cur];
            path.push(cur);
        }
        // Report the path starting from its smaller endpoint.
        if start < end {
            path.reverse();
        }
        Ok(path)
    }

    /// Splices one fresh vertex into each listed edge.
    ///
    /// Original ids are preserved; the vertex for `es[i]` gets id `n + i`.
    pub fn subdivide(&self, es: &[Edge]) -> Result<Graph, GraphError> {
        let mut chosen = BTreeSet::new();
        for &(u, v) in es {
            let e = (u.min(v), u.max(v));
            if !self.has_edge(e.0, e.1) {
                return Err(GraphError::InvalidSubdivision(format!("edge ({u}, {v}) is not in the graph")));
            }
            if !chosen.insert(e) {
                return Err(GraphError::InvalidSubdivision(format!("edge ({u}, {v}) listed twice")));
            }
        }
        let n = self.n + es.len();
        let mut edges: Vec<Edge> = self.edges.iter().copied().filter(|e| !chosen.contains(e)).collect();
        for (i, &(u, v)) in es.iter().enumerate() {
            let w = self.n + i;
            edges.push((u.min(w), u.max(w)));
            edges.push((v.min(w), v.max(w)));
        }
        edges.sort_unstable();
        Ok(Self::from_sorted_edges(n, edges))
    }

    /// `H ∘ K_1`: vertex `i` gains the pendant leaf `n + i`.
    pub fn corona(&self) -> Graph {
        let n = self.n;
        let mut edges = self.edges.clone();
        edges.extend((0..n).map(|i| (i, n + i)));
        edges.sort_unstable();
        Self::from_sorted_edges(2 * n, edges)
    }

    /// Disjoint union with `other` (whose ids are shifted by `self.order()`)
    /// plus the edge `anchor - (self.order() + other_vertex)`.
    pub fn attach(&self, anchor: usize, other: &Graph, other_vertex: usize) -> Result<Graph, GraphError> {
        if anchor >= self.n {
            return Err(GraphError::NoSuchVertex(anchor));
        }
        if other_vertex >= other.n {
            return Err(GraphError::NoSuchVertex(other_vertex));
        }
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        edges.push((anchor, other_vertex + off));
        edges.sort_unstable();
        Ok(Self::from_sorted_edges(self.n + other.n, edges))
    }

    /// Adds a leaf with id `n` hanging from `v`.
    pub fn add_pendant(&self, v: usize) -> Result<Graph, GraphError> {
        self.attach(v, &Graph::empty(1), 0)
    }

    /// The subgraph induced by `keep`, relabelled to `0..keep.len()` in
    /// ascending order. Returns the graph and the new-to-old id map.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect::<Vec<_>>();
        // Relabelling is monotone, so the edge list stays sorted.
        (Self::from_sorted_edges(old.len(), edges), old)
    }

    /// Removes the listed vertices (see [`Graph::induced`]).
    pub fn remove_vertices(&self, drop: &VertexSet) -> (Graph, Vec<usize>) {
        self.induced(&drop.complement())
    }

    /// Applies `perm` (old id -> new id) to every vertex.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self::from_sorted_edges(self.n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Vertex status in a labelled tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    A,
    B,
    C,
}

impl Status {
    pub fn as_byte(self) -> u8 {
        match self {
            Status::A => b'A',
            Status::B => b'B',
            Status::C => b'C',
        }
    }
}

/// A tree with a weak partition of its vertices into the classes A, B, C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    tree: Graph,
    status: Vec<Status>,
}

impl LabeledTree {
    pub fn new(tree: Graph, status: Vec<Status>) -> Result<Self, GraphError> {
        tree.require_tree()?;
        if status.len() != tree.order() {
            return Err(GraphError::NoSuchVertex(status.len().min(tree.order())));
        }
        Ok(Self { tree, status })
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn status(&self, v: usize) -> Status {
        self.status[v]
    }

    pub fn statuses(&self) -> &[Status] {
        &self.status
    }

    pub fn class(&self, s: Status) -> VertexSet {
        VertexSet::from_iter_with_capacity(
            self.tree.order(),
            self.status.iter().enumerate().filter(|(_, &x)| x == s).map(|(v, _)| v),
        )
    }

    pub fn into_parts(self) -> (Graph, Vec<Status>) {
        (self.tree, self.status)
    }
}
