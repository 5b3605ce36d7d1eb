//! Linear embeddings: a spine order plus a partition of the edges into pages.

mod crossing;
mod io;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph};

pub use crossing::{crosses, crossing_free, interleaved, CrossingTable, DEFAULT_MATRIX_THRESHOLD};
pub use io::{parse_embedding, parse_spine, serialize_embedding};
pub use verify::{
    locality_profile, page_components, split_components, verify, verify_with_cap, VerificationReport, Violation,
    ViolationKind, DEFAULT_VIOLATION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("spine is not a permutation of 0..{n}: {detail}")]
    SpineNotPermutation { n: usize, detail: String },
    #[error("page assignment covers {got} edges, graph has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("page ids are not contiguous: page {0} is empty")]
    EmptyPage(usize),
    #[error("edge {0} unassigned")]
    EdgeUnassigned(Edge),
    #[error("edge {0} assigned more than once")]
    EdgeAssignedTwice(Edge),
    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
}

/// A total order of the vertices: `order[i]` is the vertex at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpineOrder {
    order: Vec<usize>,
    #[serde(skip)]
    inverse: Vec<usize>,
}

impl SpineOrder {
    pub fn new(order: Vec<usize>) -> Result<Self, EmbeddingError> {
        let n = order.len();
        let mut inverse = vec![usize::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(EmbeddingError::SpineNotPermutation { n, detail: format!("vertex {v} out of range") });
            }
            if inverse[v] != usize::MAX {
                return Err(EmbeddingError::SpineNotPermutation { n, detail: format!("vertex {v} listed twice") });
            }
            inverse[v] = pos;
        }
        Ok(SpineOrder { order, inverse })
    }

    pub fn identity(n: usize) -> Self {
        SpineOrder { order: (0..n).collect(), inverse: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn positions(&self) -> &[usize] {
        &self.inverse
    }

    pub fn position(&self, v: usize) -> usize {
        self.inverse[v]
    }

    /// Cyclic shift moving the vertex at position `k` to the front.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.order.len();
        if n == 0 {
            return self.clone();
        }
        let order = (0..n).map(|i| self.order[(i + k) % n]).collect();
        SpineOrder::new(order).expect("rotation of a permutation")
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        SpineOrder::new(order).expect("reversal of a permutation")
    }
}

/// Page id of every edge (indexed by edge id). Ids are contiguous `0..p` and
/// no page is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PagePartition {
    assignment: Vec<usize>,
    page_count: usize,
}

impl PagePartition {
    pub fn new(assignment: Vec<usize>) -> Result<Self, EmbeddingError> {
        let page_count = assignment.iter().map(|&p| p + 1).max().unwrap_or(0);
        let mut used = vec![false; page_count];
        for &p in &assignment {
            used[p] = true;
        }
        if let Some(p) = used.iter().position(|&u| !u) {
            return Err(EmbeddingError::EmptyPage(p));
        }
        Ok(PagePartition { assignment, page_count })
    }

    /// Compacts arbitrary page labels to `0..p`, preserving their relative order.
    pub fn normalized(labels: &[usize]) -> Self {
        let mut distinct: Vec<usize> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let assignment = labels.iter().map(|l| distinct.binary_search(l).unwrap()).collect();
        PagePartition { assignment, page_count: distinct.len() }
    }

    pub fn page_of(&self, edge_id: usize) -> usize {
        self.assignment[edge_id]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn page_count(&self) -> usize {
        self.page_count
    }

    /// Edge ids on each page, ascending.
    pub fn pages(&self) -> Vec<Vec<usize>> {
        let mut pages = vec![Vec::new(); self.page_count];
        for (e, &p) in self.assignment.iter().enumerate() {
            pages[p].push(e);
        }
        pages
    }
}

/// A graph with a spine order and a page partition of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEmbedding {
    graph: Graph,
    spine: SpineOrder,
    pages: PagePartition,
}

impl LinearEmbedding {
    pub fn new(graph: Graph, spine: SpineOrder, pages: PagePartition) -> Result<Self, EmbeddingError> {
        if spine.len() != graph.n() {
            return Err(EmbeddingError::SpineNotPermutation {
                n: graph.n(),
                detail: format!("spine has {} entries", spine.len()),
            });
        }
        if pages.assignment.len() != graph.m() {
            return Err(EmbeddingError::AssignmentLength { expected: graph.m(), got: pages.assignment.len() });
        }
        Ok(LinearEmbedding { graph, spine, pages })
    }

    /// Builds an embedding from explicit edge lists per page, with pages
    /// given in order. Empty lists are dropped.
    pub fn from_pages(graph: Graph, spine: SpineOrder, pages: &[Vec<Edge>]) -> Result<Self, EmbeddingError> {
        let mut labels = vec![usize::MAX; graph.m()];
        for (p, list) in pages.iter().enumerate() {
            for e in list {
                let id = graph.edge_id(e.u, e.v).ok_or(EmbeddingError::EdgeNotInGraph(*e))?;
                if labels[id] != usize::MAX {
                    return Err(EmbeddingError::EdgeAssignedTwice(*e));
                }
                labels[id] = p;
            }
        }
        if let Some(id) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(EmbeddingError::EdgeUnassigned(graph.edge(id)));
        }
        let pages = PagePartition::normalized(&labels);
        LinearEmbedding::new(graph, spine, pages)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn spine(&self) -> &SpineOrder {
        &self.spine
    }

    pub fn pages(&self) -> &PagePartition {
        &self.pages
    }

    pub fn page_count(&self) -> usize {
        self.pages.page_count
    }

    pub fn with_spine(&self, spine: SpineOrder) -> Result<Self, EmbeddingError> {
        LinearEmbedding::new(self.graph.clone(), spine, self.pages.clone())
    }

    /// Edges on each page, in edge-id order.
    pub fn page_edges(&self) -> Vec<Vec<Edge>> {
        self.pages.pages().into_iter().map(|ids| ids.into_iter().map(|i| self.graph.edge(i)).collect()).collect()
    }
}
