//! Simple undirected graphs on dense vertex ids `0..n`.

mod corpus;
mod generate;
mod io;
mod ktree;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corpus::{nonisomorphic_graphs, random_graph};
pub use generate::{
    gen_complete, gen_complete_bipartite, gen_cycle, gen_path, gen_stacked_triangulation,
    gen_stacked_triangulation_capped, generate, GraphFamily, DEFAULT_STACKED_LEVEL_CAP,
};
pub use io::{parse_graph, serialize_graph};
pub use ktree::{gen_k_tree, recognize_k_tree, stacked_triangulation_ktree, KTree};

/// An undirected edge, always stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn has_endpoint(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("requested size exceeds cap: {0}")]
    CapExceeded(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Immutable simple graph. Edges are kept sorted lexicographically and the
/// position of an edge in that order is its edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<Edge, usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adjacency: vec![Vec::new(); n], index: HashMap::new() }
    }

    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// parallel edges.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted(n, edges))
    }

    /// Like [`Graph::new`] but silently drops duplicates.
    pub fn from_edges_dedup(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_sorted(n, edges))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
            index.insert(*e, i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.index.contains_key(&Edge::new(a, b))
    }

    /// Edge id of `a-b`, if present.
    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.index.get(&Edge::new(a, b)).copied()
    }

    /// Subgraph induced by the vertices in `keep`, relabeled in increasing order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.n];
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            map[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
            .map(|e| (map[e.u], map[e.v]));
        Graph::new(sorted.len(), pairs).expect("induced subgraph of a simple graph is simple")
    }

    /// Spanning subgraph keeping the edges whose ids are in `ids`.
    pub fn edge_subgraph(&self, ids: impl IntoIterator<Item = usize>) -> Graph {
        let pairs: Vec<_> = ids.into_iter().map(|i| (self.edges[i].u, self.edges[i].v)).collect();
        Graph::from_edges_dedup(self.n, pairs).expect("edge subgraph of a simple graph is simple")
    }

    /// Number of edges with both endpoints in the vertex bitmask (n <= 64).
    pub fn edges_within_mask(&self, mask: u64) -> usize {
        self.edges.iter().filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1).count()
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Vertex order obtained by repeatedly removing a minimum-degree vertex,
    /// together with the degeneracy.
    pub fn degeneracy_order(&self) -> (Vec<usize>, usize) {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let maxd = deg.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
        for v in 0..self.n {
            buckets[deg[v]].push(v);
        }
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut degeneracy = 0;
        // After removing a vertex of degree d the minimum is at least d - 1.
        let mut floor = 0;
        while order.len() < self.n {
            let mut d = floor;
            let v = loop {
                // Buckets hold stale entries; skip them lazily.
                match buckets[d].pop() {
                    Some(v) if !removed[v] && deg[v] == d => break v,
                    Some(_) => {}
                    None => d += 1,
                }
            };
            degeneracy = degeneracy.max(d);
            floor = d.saturating_sub(1);
            removed[v] = true;
            order.push(v);
            for &w in &self.adjacency[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    buckets[deg[w]].push(w);
                }
            }
        }
        (order, degeneracy)
    }
}
