//! Classical, local and union page numbers of graphs.
//!
//! A linear embedding places the vertices on a spine and partitions the edges
//! into pages. The crate covers the whole pipeline around it:
//!
//! - [`graph`]: graphs, the generators for every family used (complete,
//!   complete bipartite, stacked triangulations, seeded k-trees) and file I/O;
//! - [`embedding`]: spines, page partitions, the crossing test and the
//!   book / union / locality verifier;
//! - [`bounds`]: exact densest-subgraph ratios, density lower bounds and
//!   forest partitions of minimum size;
//! - [`construct`]: star-forest embeddings, the `K_n` zigzag, cyclic template
//!   search, k-tree color-pair trees and the clique amplifier;
//! - [`solver`]: exact page numbers by canonical spine enumeration plus
//!   branch and bound, and a naive oracle for cross-checking.

pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod embedding;
pub mod graph;
pub mod perm;
pub mod rng;
pub mod solver;

use thiserror::Error;

pub use embedding::{verify, LinearEmbedding, PagePartition, SpineOrder, VerificationReport};
pub use graph::{Edge, Graph, GraphError};

/// A line-numbered error from one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}
