//! Exact page numbers.
//!
//! On a fixed spine each parameter is a decision problem over edge-to-page
//! assignments, answered by backtracking (see `search`). Over all spines the
//! solver walks the canonical spines, always asking for one less than the
//! best value found so far, and stops early once the density lower bound is
//! reached.

mod oracle;
mod rollback;
mod search;
mod spines;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

pub use oracle::{oracle, oracle_all, OracleValues, ORACLE_MAX_VERTICES};
pub use spines::{canonical_spine_at, canonical_spine_count, canonical_spines, spine_index_space};

use search::{decide, greedy_pages, measure, Decision, Meter, SpineContext};

use crate::bounds::{lemma1_lower_bound, BoundsError};
use crate::construct::{kn_zigzag, orientation_stars, star_forest_partition, ConstructError, Orientation};
use crate::embedding::{verify, EmbeddingError, LinearEmbedding, PagePartition, SpineOrder, DEFAULT_MATRIX_THRESHOLD};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Pn,
    PnLocal,
    PnUnion,
}

impl Parameter {
    pub const ALL: [Parameter; 3] = [Parameter::Pn, Parameter::PnLocal, Parameter::PnUnion];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::Pn => "pn",
            Parameter::PnLocal => "pn_local",
            Parameter::PnUnion => "pn_union",
        }
    }

    /// The value of `emb` for this parameter, if `emb` is the right kind of
    /// embedding (a book embedding for `pn` and `pn_local`, a union
    /// embedding for `pn_union`).
    pub fn value_of(self, emb: &LinearEmbedding) -> Option<usize> {
        let r = verify(emb);
        match self {
            Parameter::Pn => r.is_book.then_some(r.page_count),
            Parameter::PnLocal => r.is_book.then_some(r.locality),
            Parameter::PnUnion => r.is_union.then_some(r.page_count),
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pn" => Ok(Parameter::Pn),
            "pnl" | "pn_local" => Ok(Parameter::PnLocal),
            "pnu" | "pn_union" => Ok(Parameter::PnUnion),
            other => Err(format!("unknown parameter {other:?} (expected pn, pnl or pnu)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SolveRequest {
    pub graph: Graph,
    pub parameter: Parameter,
    pub spine: Option<SpineOrder>,
    pub budget: Budget,
    /// Worker threads; 0 picks the available parallelism.
    pub jobs: usize,
}

impl SolveRequest {
    pub fn new(graph: Graph, parameter: Parameter) -> Self {
        SolveRequest { graph, parameter, spine: None, budget: Budget::default(), jobs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub spines_examined: u64,
    pub elapsed_ms: u64,
}

/// `lower <= value <= upper`; the two meet when the search completed.
#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub parameter: Parameter,
    pub exact: bool,
    pub lower: usize,
    pub upper: usize,
    /// An embedding achieving `upper`.
    #[serde(skip)]
    pub certificate: Option<LinearEmbedding>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {0} edges; exact search supports at most {DEFAULT_MATRIX_THRESHOLD}")]
    TooManyEdges(usize),
    #[error("oracle is limited to {ORACLE_MAX_VERTICES} vertices, graph has {0}")]
    OracleTooLarge(usize),
    #[error("spine has {spine} vertices, graph has {graph}")]
    SpineMismatch { spine: usize, graph: usize },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Greedy DSATUR coloring of the crossing graph on `spine`, as a book
/// embedding. `None` above the crossing-matrix size limit.
pub fn greedy_book_embedding(graph: &Graph, spine: &SpineOrder) -> Option<LinearEmbedding> {
    if graph.m() > DEFAULT_MATRIX_THRESHOLD {
        return None;
    }
    let ctx = SpineContext::new(graph, spine);
    Some(embedding_from_labels(graph, spine, &greedy_pages(&ctx)))
}

fn embedding_from_labels(graph: &Graph, spine: &SpineOrder, labels: &[usize]) -> LinearEmbedding {
    LinearEmbedding::new(graph.clone(), spine.clone(), PagePartition::normalized(labels))
        .expect("labels cover every edge")
}

/// Cheap embeddings on `spine`: greedy coloring of the crossing graph,
/// degeneracy stars, and star forests of a minimum forest partition. Stars
/// never cross themselves, so the last two work on any spine.
fn seed_embeddings(graph: &Graph, spine: &SpineOrder, ctx: &SpineContext) -> Result<Vec<LinearEmbedding>, SolveError> {
    let mut out = vec![embedding_from_labels(graph, spine, &greedy_pages(ctx))];
    let stars = orientation_stars(graph, Orientation::Degeneracy)?;
    out.push(LinearEmbedding::from_pages(graph.clone(), spine.clone(), &stars)?);
    let sfp = star_forest_partition(graph);
    out.push(LinearEmbedding::from_pages(graph.clone(), spine.clone(), &sfp.star_forests)?);
    Ok(out)
}

fn best_seed(parameter: Parameter, seeds: Vec<LinearEmbedding>) -> (usize, LinearEmbedding) {
    seeds
        .into_iter()
        .filter_map(|e| parameter.value_of(&e).map(|v| (v, e)))
        .min_by_key(|(v, _)| *v)
        .expect("greedy coloring is always a book embedding")
}

fn check(graph: &Graph) -> Result<(), SolveError> {
    if graph.m() > DEFAULT_MATRIX_THRESHOLD {
        return Err(SolveError::TooManyEdges(graph.m()));
    }
    Ok(())
}

/// Exact value on one spine.
pub fn solve_fixed_spine(
    graph: &Graph,
    spine: &SpineOrder,
    parameter: Parameter,
    budget: Budget,
) -> Result<SolveResult, SolveError> {
    check(graph)?;
    if spine.len() != graph.n() {
        return Err(SolveError::SpineMismatch { spine: spine.len(), graph: graph.n() });
    }
    let started = Instant::now();
    let lower = lemma1_lower_bound(graph)?;
    let ctx = SpineContext::new(graph, spine);
    let (mut upper, mut cert) = best_seed(parameter, seed_embeddings(graph, spine, &ctx)?);
    let (shared, stop) = (AtomicU64::new(0), AtomicBool::new(false));
    let mut meter = Meter::new(&shared, &stop, budget.node_limit, budget.time_limit.map(|t| started + t));
    let mut exact = upper <= lower;
    while !exact {
        match decide(&ctx, parameter, upper - 1, &mut meter) {
            Decision::Yes(labels) => {
                upper = measure(graph, &labels, parameter);
                cert = embedding_from_labels(graph, spine, &labels);
                exact = upper <= lower;
            }
            Decision::No => exact = true,
            Decision::Aborted => break,
        }
    }
    meter.flush();
    Ok(SolveResult {
        parameter,
        exact,
        lower: if exact { upper } else { lower },
        upper,
        certificate: Some(cert),
        stats: SolveStats {
            nodes: shared.load(Ordering::Relaxed),
            spines_examined: 1,
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
    })
}

struct Best {
    value: usize,
    index: u64,
    embedding: LinearEmbedding,
}

/// Exact value over all spines, or an interval when the budget runs out.
pub fn solve(request: &SolveRequest) -> Result<SolveResult, SolveError> {
    let graph = &request.graph;
    let parameter = request.parameter;
    if let Some(spine) = &request.spine {
        return solve_fixed_spine(graph, spine, parameter, request.budget);
    }
    check(graph)?;
    let started = Instant::now();
    let n = graph.n();
    let lower = lemma1_lower_bound(graph)?;

    let identity = SpineOrder::identity(n);
    let mut seeds = seed_embeddings(graph, &identity, &SpineContext::new(graph, &identity))?;
    if graph.is_complete() && n >= 2 {
        seeds.push(kn_zigzag(n)?);
    }
    let (seed_value, seed) = best_seed(parameter, seeds);

    let best = Mutex::new(Best { value: seed_value, index: u64::MAX, embedding: seed });
    let upper = AtomicUsize::new(seed_value);
    let next = AtomicU64::new(0);
    let examined = AtomicU64::new(0);
    let (shared, stop) = (AtomicU64::new(0), AtomicBool::new(false));
    let aborted = AtomicBool::new(false);
    let deadline = request.budget.time_limit.map(|t| started + t);
    let total = spine_index_space(n);

    let worker = || {
        let mut meter = Meter::new(&shared, &stop, request.budget.node_limit, deadline);
        'spines: loop {
            if upper.load(Ordering::SeqCst) <= lower {
                break;
            }
            let index = next.fetch_add(1, Ordering::SeqCst);
            if index >= total {
                break;
            }
            let Some(spine) = canonical_spine_at(n, index) else { continue };
            examined.fetch_add(1, Ordering::Relaxed);
            let ctx = SpineContext::new(graph, &spine);
            loop {
                let target = upper.load(Ordering::SeqCst);
                if target <= lower {
                    break 'spines;
                }
                match decide(&ctx, parameter, target - 1, &mut meter) {
                    Decision::Yes(labels) => {
                        let value = measure(graph, &labels, parameter);
                        let mut b = best.lock().unwrap();
                        if value < b.value || (value == b.value && index < b.index) {
                            *b = Best { value, index, embedding: embedding_from_labels(graph, &spine, &labels) };
                        }
                        upper.fetch_min(value, Ordering::SeqCst);
                    }
                    Decision::No => break,
                    Decision::Aborted => {
                        aborted.store(true, Ordering::SeqCst);
                        break 'spines;
                    }
                }
            }
        }
        meter.flush();
    };

    let jobs = match request.jobs {
        0 => std::thread::available_parallelism().map_or(1, |p| p.get()),
        j => j,
    };
    if jobs == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(worker);
            }
        });
    }

    let best = best.into_inner().unwrap();
    let exact = !aborted.load(Ordering::SeqCst) || best.value <= lower;
    Ok(SolveResult {
        parameter,
        exact,
        lower: if exact { best.value } else { lower },
        upper: best.value,
        certificate: Some(best.embedding),
        stats: SolveStats {
            nodes: shared.load(Ordering::Relaxed),
            spines_examined: examined.load(Ordering::Relaxed),
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_complete_bipartite, gen_path};

    fn exact(g: &Graph, p: Parameter) -> usize {
        let r = solve(&SolveRequest::new(g.clone(), p)).unwrap();
        let cert = r.certificate.as_ref().unwrap();
        assert_eq!(p.value_of(cert), Some(r.upper));
        r.value().unwrap()
    }

    #[test]
    fn k5_and_k33() {
        let k5 = gen_complete(5);
        assert_eq!(exact(&k5, Parameter::Pn), 3);
        assert_eq!(exact(&k5, Parameter::PnLocal), 2);
        assert_eq!(exact(&k5, Parameter::PnUnion), 3);
        let k33 = gen_complete_bipartite(3, 3);
        assert_eq!(exact(&k33, Parameter::Pn), 3);
        assert_eq!(exact(&k33, Parameter::PnLocal), 2);
        assert_eq!(exact(&k33, Parameter::PnUnion), 2);
    }

    #[test]
    fn fixed_spine_values() {
        let k5 = gen_complete(5);
        let r = solve_fixed_spine(&k5, &SpineOrder::identity(5), Parameter::Pn, Budget::default()).unwrap();
        assert_eq!(r.value(), Some(3));
        let p = gen_path(5);
        for param in Parameter::ALL {
            let r = solve_fixed_spine(&p, &SpineOrder::identity(5), param, Budget::default()).unwrap();
            assert_eq!(r.value(), Some(1));
        }
        let crossed = SpineOrder::new(vec![0, 2, 4, 1, 3]).unwrap();
        let r = solve_fixed_spine(&p, &crossed, Parameter::Pn, Budget::default()).unwrap();
        assert!(r.value().unwrap() >= 1);
    }

    #[test]
    fn edgeless_graph() {
        for p in Parameter::ALL {
            assert_eq!(exact(&Graph::empty(3), p), 0);
        }
    }

    #[test]
    fn parallel_agrees() {
        let g = gen_complete(6);
        for p in Parameter::ALL {
            let mut req = SolveRequest::new(g.clone(), p);
            let one = solve(&req).unwrap().value();
            req.jobs = 4;
            assert_eq!(solve(&req).unwrap().value(), one);
        }
    }

    #[test]
    fn budget_gives_interval() {
        let mut req = SolveRequest::new(gen_complete(8), Parameter::PnLocal);
        req.budget.node_limit = Some(50);
        let r = solve(&req).unwrap();
        assert!(r.lower <= r.upper);
        assert!(r.certificate.is_some());
    }

    #[test]
    fn parameter_names() {
        assert_eq!("pnl".parse::<Parameter>().unwrap(), Parameter::PnLocal);
        assert_eq!(Parameter::PnUnion.to_string(), "pn_union");
        assert!("x".parse::<Parameter>().is_err());
    }
}
