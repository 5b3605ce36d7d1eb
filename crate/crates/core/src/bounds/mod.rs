//! Lower and upper bounds on page numbers.

mod arboricity;
mod density;
mod flow;
mod report;

use thiserror::Error;

pub use arboricity::{arboricity_partition, is_forest, nash_williams_arboricity, ForestPartition};
pub use density::{
    ceil, density_report, mad, max_density, max_density_brute, max_density_flow, DensityMax, DensityObjective,
    DensityReport, Rational, BRUTE_FORCE_LIMIT,
};
pub use flow::FlowNetwork;
pub use report::{bound_report, bound_reports, BoundReport, Provenance, Side, Target, DENSITY_EDGE_LIMIT};

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("density objective {0:?} needs edge_weight >= 1 and 0 <= vertex_offset < 2 * edge_weight")]
    InvalidObjective(DensityObjective),
    #[error("no vertex subset has a positive denominator")]
    NoFeasibleSubgraph,
    #[error("subset enumeration limited to 24 vertices, graph has {0}")]
    TooLarge(usize),
}

/// Every page of a local or union embedding restricted to a subgraph `H` is
/// outerplanar per vertex, so `|E(H)| <= k (2|V(H)| - 3)`. Returns the least
/// such `k` over all subgraphs, or 0 without edges.
pub fn lemma1_lower_bound(graph: &Graph) -> Result<usize, BoundsError> {
    if graph.m() == 0 {
        return Ok(0);
    }
    Ok(ceil(max_density(graph, DensityObjective::OUTERPLANAR)?.value))
}

/// Smallest `k` with `|E| <= 2k|V| - 3 max(pn_lower, k)`, where `pn_lower` is a
/// known lower bound on the classical page number. Each of the (at least
/// `pn_lower`) pages of a `k`-local book embedding loses three edges against
/// the `2k|V|` budget.
pub fn refined_local_bound(graph: &Graph, pn_lower: usize) -> usize {
    let (n, m) = (graph.n() as i64, graph.m() as i64);
    if m == 0 {
        return 0;
    }
    (1..).find(|&k: &i64| m <= 2 * k * n - 3 * k.max(pn_lower as i64)).expect("bound grows without limit") as usize
}

/// Checks `pn >= pn_union >= pn_local >= mad / 4` exactly.
pub fn eq4_chain_check(graph: &Graph, pn_local: usize, pn_union: usize, pn: usize) -> Result<bool, BoundsError> {
    let quarter = mad(graph)?.value / 4;
    Ok(pn >= pn_union && pn_union >= pn_local && Rational::from_integer(pn_local as i64) >= quarter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_complete_bipartite};

    #[test]
    fn lemma1_values() {
        assert_eq!(lemma1_lower_bound(&gen_complete(5)).unwrap(), 2);
        assert_eq!(lemma1_lower_bound(&gen_complete(4)).unwrap(), 2);
        assert_eq!(lemma1_lower_bound(&gen_complete(3)).unwrap(), 1);
        assert_eq!(lemma1_lower_bound(&Graph::empty(4)).unwrap(), 0);
    }

    #[test]
    fn refined_bound_values() {
        let k7 = gen_complete(7);
        assert_eq!(refined_local_bound(&k7, 4), 3);
        // Without the classical bound only the per-page budget remains.
        assert_eq!(refined_local_bound(&k7, 0), 2);
        assert_eq!(refined_local_bound(&gen_complete(5), 3), 2);
        assert_eq!(refined_local_bound(&gen_complete_bipartite(5, 3), 3), 2);
        assert_eq!(refined_local_bound(&Graph::empty(3), 5), 0);
    }

    #[test]
    fn chain_on_k5() {
        let k5 = gen_complete(5);
        assert!(eq4_chain_check(&k5, 2, 3, 3).unwrap());
        assert!(!eq4_chain_check(&k5, 3, 2, 3).unwrap());
        // mad(K_5) / 4 = 1, so a local value of 0 breaks the chain.
        assert!(!eq4_chain_check(&k5, 0, 3, 3).unwrap());
    }
}
