//! Constructive embeddings: star pipelines, complete-graph books, cyclic
//! templates and k-tree tools.

mod amplifier;
mod ktree_colors;
mod stars;
mod template;
mod zigzag;

use thiserror::Error;

pub use amplifier::lemma2_amplifier;
pub use ktree_colors::{ktree_color_partition, KTreeColoring, PairTree};
pub use stars::{
    compact_star_forests, local_embedding_from_stars, orientation_stars, star_center, star_forest_partition,
    star_forests_from_forests, union_embedding_from_star_forests, Orientation, StarForestPartition,
};
pub use template::{template_search, template_search_with, CyclicTemplate, EdgeOrder, TemplateFound, TemplateQuery};
pub use zigzag::kn_zigzag;

use crate::embedding::EmbeddingError;
use crate::graph::GraphError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("part {0} is not a star")]
    NotAStar(usize),
    #[error("not a k-tree: {0}")]
    NotKTree(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no template exists for these parameters")]
    TemplateNotFound,
    #[error("template search stopped after {0} nodes without a decision")]
    TemplateTimeout(u64),
    #[error("constructed embedding failed verification: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}
