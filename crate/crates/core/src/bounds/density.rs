//! Exact maximum of `|E(H)| / (w |V(H)| - c)` over vertex subsets `H`.
//!
//! Only induced subgraphs need to be considered, since adding edges between
//! chosen vertices never lowers the ratio. Two independent routes are kept:
//! subset enumeration for small graphs, and Dinkelbach iteration over
//! Goldberg's min-cut network for the rest.

use num_rational::Ratio;
use serde::Serialize;

use super::flow::FlowNetwork;
use super::BoundsError;
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

/// Graphs up to this many vertices are solved by subset enumeration.
pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Hard limit for the enumeration route.
const BRUTE_FORCE_MAX: usize = 24;

/// Objective `|E(H)| / (edge_weight * |V(H)| - vertex_offset)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityObjective {
    pub edge_weight: i64,
    pub vertex_offset: i64,
}

impl DensityObjective {
    /// `|E(H)| / |V(H)|`, half the average degree.
    pub const HALF_AVERAGE_DEGREE: Self = DensityObjective { edge_weight: 1, vertex_offset: 0 };
    /// `|E(H)| / (2|V(H)| - 3)`, the outerplanar edge budget.
    pub const OUTERPLANAR: Self = DensityObjective { edge_weight: 2, vertex_offset: 3 };
    /// `|E(H)| / (|V(H)| - 1)`, the forest edge budget.
    pub const FOREST: Self = DensityObjective { edge_weight: 1, vertex_offset: 1 };

    fn denominator(&self, vertices: usize) -> i64 {
        self.edge_weight * vertices as i64 - self.vertex_offset
    }

    /// Smallest subset size with a positive denominator.
    fn min_size(&self) -> usize {
        (self.vertex_offset / self.edge_weight + 1) as usize
    }

    fn check(&self) -> Result<(), BoundsError> {
        if self.edge_weight < 1 || self.vertex_offset < 0 || self.vertex_offset >= 2 * self.edge_weight {
            return Err(BoundsError::InvalidObjective(*self));
        }
        Ok(())
    }
}

/// A maximizing vertex subset and its ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityMax {
    pub value: Rational,
    pub witness: Vec<usize>,
}

fn no_edges(graph: &Graph, obj: DensityObjective) -> Result<DensityMax, BoundsError> {
    let size = obj.min_size();
    if graph.n() < size {
        return Err(BoundsError::NoFeasibleSubgraph);
    }
    Ok(DensityMax { value: Rational::from_integer(0), witness: (0..size).collect() })
}

/// Exact maximizer, dispatching on graph size.
pub fn max_density(graph: &Graph, obj: DensityObjective) -> Result<DensityMax, BoundsError> {
    if graph.n() <= BRUTE_FORCE_LIMIT {
        max_density_brute(graph, obj)
    } else {
        max_density_flow(graph, obj)
    }
}

/// Enumerates every vertex subset. Ties keep the first subset in bitmask order.
pub fn max_density_brute(graph: &Graph, obj: DensityObjective) -> Result<DensityMax, BoundsError> {
    obj.check()?;
    let n = graph.n();
    if n > BRUTE_FORCE_MAX {
        return Err(BoundsError::TooLarge(n));
    }
    if graph.m() == 0 {
        return no_edges(graph, obj);
    }
    let adj: Vec<u32> = (0..n).map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut edges = vec![0u32; 1 << n];
    let mut best: Option<(i64, i64, u32)> = None;
    for mask in 1u32..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        edges[mask as usize] = edges[rest as usize] + (adj[low] & rest).count_ones();
        let den = obj.denominator(mask.count_ones() as usize);
        if den <= 0 {
            continue;
        }
        let num = edges[mask as usize] as i64;
        if best.is_none_or(|(bn, bd, _)| num * bd > bn * den) {
            best = Some((num, den, mask));
        }
    }
    let (num, den, mask) = best.ok_or(BoundsError::NoFeasibleSubgraph)?;
    Ok(DensityMax { value: Rational::new(num, den), witness: (0..n).filter(|&v| mask >> v & 1 == 1).collect() })
}

/// Dinkelbach iteration: starting from a single edge, repeatedly find the
/// subset maximizing `q E(H) - p (w |V(H)| - c)` for the current ratio `p/q`
/// and move to its ratio until no subset beats it. Each step is a min cut in
/// Goldberg's network. When `c > 0`, small subsets would get a spurious bonus,
/// so one vertex (or one edge, when `c > w`) is forced into `H` per cut.
pub fn max_density_flow(graph: &Graph, obj: DensityObjective) -> Result<DensityMax, BoundsError> {
    obj.check()?;
    if graph.m() == 0 {
        return no_edges(graph, obj);
    }
    let (w, c) = (obj.edge_weight, obj.vertex_offset);
    let first = graph.edge(0);
    let mut best = DensityMax { value: Rational::new(1, obj.denominator(2)), witness: vec![first.u, first.v] };

    let forced: Vec<Vec<usize>> = if c == 0 {
        vec![Vec::new()]
    } else if c <= w {
        (0..graph.n()).map(|v| vec![v]).collect()
    } else {
        graph.edges().iter().map(|e| vec![e.u, e.v]).collect()
    };

    loop {
        let (p, q) = (*best.value.numer(), *best.value.denom());
        let mut improved: Option<(Rational, Vec<usize>)> = None;
        for f in &forced {
            let h = max_profit_subset(graph, p * w, q, f);
            let e = graph.induced_edge_count(&h) as i64;
            let den = obj.denominator(h.len());
            if den <= 0 || q * e - p * den <= 0 {
                continue;
            }
            let r = Rational::new(e, den);
            if improved.as_ref().is_none_or(|(br, _)| r > *br) {
                improved = Some((r, h));
            }
        }
        match improved {
            Some((value, witness)) => best = DensityMax { value, witness },
            None => return Ok(best),
        }
    }
}

/// A subset `H ⊇ forced` maximizing `q E(H) - a |V(H)|`, via Goldberg's
/// network: `s -> v` with capacity `q m`, `v -> t` with `q m + 2a - q deg(v)`,
/// and capacity `q` both ways along every edge. The cut of `{s} ∪ H` equals
/// `q m n + 2 (a |H| - q E(H))`.
fn max_profit_subset(graph: &Graph, a: i64, q: i64, forced: &[usize]) -> Vec<usize> {
    let n = graph.n();
    let m = graph.m() as i64;
    let (s, t) = (n, n + 1);
    let inf = i64::MAX / 4;
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        let source_cap = if forced.contains(&v) { inf } else { q * m };
        net.add_arc(s, v, source_cap);
        net.add_arc(v, t, q * m + 2 * a - q * graph.degree(v) as i64);
    }
    for e in graph.edges() {
        net.add_arcs(e.u, e.v, q, q);
    }
    net.max_flow(s, t);
    let side = net.source_side(s);
    (0..n).filter(|&v| side[v]).collect()
}

/// Density figures of a graph with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    /// Maximum average degree, `max 2|E(H)|/|V(H)|`.
    #[serde(serialize_with = "ser_ratio")]
    pub mad: Rational,
    pub mad_witness: Vec<usize>,
    /// `max |E(H)| / (2|V(H)| - 3)`.
    #[serde(serialize_with = "ser_ratio")]
    pub lemma1_value: Rational,
    pub lemma1_witness: Vec<usize>,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Maximum average degree and its witness. Zero for a graph without edges.
pub fn mad(graph: &Graph) -> Result<DensityMax, BoundsError> {
    let half = max_density(graph, DensityObjective::HALF_AVERAGE_DEGREE)?;
    Ok(DensityMax { value: half.value * 2, witness: half.witness })
}

pub fn density_report(graph: &Graph) -> Result<DensityReport, BoundsError> {
    let m = mad(graph)?;
    let (lemma1_value, lemma1_witness) = if graph.m() == 0 {
        (Rational::from_integer(0), Vec::new())
    } else {
        let l = max_density(graph, DensityObjective::OUTERPLANAR)?;
        (l.value, l.witness)
    };
    Ok(DensityReport { mad: m.value, mad_witness: m.witness, lemma1_value, lemma1_witness })
}

/// Smallest integer not below `r` (for `r >= 0`).
pub fn ceil(r: Rational) -> usize {
    r.ceil().to_integer().max(0) as usize
}

impl Graph {
    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in vertices {
            inside[v] = true;
        }
        self.edges().iter().filter(|e| inside[e.u] && inside[e.v]).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_path, gen_stacked_triangulation, random_graph};

    /// Plain subset enumeration without incremental edge counting.
    fn oracle(graph: &Graph, obj: DensityObjective) -> Rational {
        let n = graph.n();
        let mut best: Option<Rational> = None;
        for mask in 1u64..1 << n {
            let den = obj.denominator(mask.count_ones() as usize);
            if den > 0 {
                let r = Rational::new(graph.edges_within_mask(mask) as i64, den);
                best = Some(best.map_or(r, |b| b.max(r)));
            }
        }
        best.unwrap()
    }

    fn realizes(graph: &Graph, obj: DensityObjective, d: &DensityMax) {
        let e = graph.induced_edge_count(&d.witness) as i64;
        assert_eq!(Rational::new(e, obj.denominator(d.witness.len())), d.value);
    }

    #[test]
    fn frozen_values() {
        let k5 = gen_complete(5);
        assert_eq!(mad(&k5).unwrap().value, Rational::from_integer(4));
        let l = max_density(&k5, DensityObjective::OUTERPLANAR).unwrap();
        assert_eq!(l.value, Rational::new(10, 7));
        assert_eq!(l.witness, vec![0, 1, 2, 3, 4]);
        let t1 = gen_stacked_triangulation(1).unwrap();
        let m = mad(&t1).unwrap();
        assert_eq!(m.value, Rational::new(18, 5));
        assert_eq!(m.witness.len(), 5);
        // The frozen values agree with plain enumeration.
        assert_eq!(oracle(&k5, DensityObjective::OUTERPLANAR), Rational::new(10, 7));
        assert_eq!(oracle(&t1, DensityObjective::HALF_AVERAGE_DEGREE) * 2, Rational::new(18, 5));
    }

    #[test]
    fn flow_route_matches_frozen_values() {
        let k5 = gen_complete(5);
        assert_eq!(max_density_flow(&k5, DensityObjective::OUTERPLANAR).unwrap().value, Rational::new(10, 7));
        let t1 = gen_stacked_triangulation(1).unwrap();
        assert_eq!(max_density_flow(&t1, DensityObjective::HALF_AVERAGE_DEGREE).unwrap().value, Rational::new(9, 5));
        assert_eq!(max_density_flow(&gen_path(4), DensityObjective::FOREST).unwrap().value, Rational::from_integer(1));
    }

    #[test]
    fn both_routes_agree_with_oracle() {
        let objectives =
            [DensityObjective::HALF_AVERAGE_DEGREE, DensityObjective::OUTERPLANAR, DensityObjective::FOREST];
        for seed in 0..60u64 {
            let n = 2 + (seed % 9) as usize;
            let g = random_graph(n, 1 + seed % 4, 5, seed);
            if g.m() == 0 {
                continue;
            }
            for obj in objectives {
                let expect = oracle(&g, obj);
                let b = max_density_brute(&g, obj).unwrap();
                let f = max_density_flow(&g, obj).unwrap();
                assert_eq!(b.value, expect, "brute, seed {seed}");
                assert_eq!(f.value, expect, "flow, seed {seed}");
                realizes(&g, obj, &b);
                realizes(&g, obj, &f);
            }
        }
    }

    #[test]
    fn edgeless_and_invalid() {
        let g = Graph::empty(3);
        assert_eq!(max_density(&g, DensityObjective::OUTERPLANAR).unwrap().value, Rational::from_integer(0));
        assert_eq!(max_density_flow(&g, DensityObjective::FOREST).unwrap().witness, vec![0, 1]);
        assert!(max_density(&Graph::empty(1), DensityObjective::OUTERPLANAR).is_err());
        let bad = DensityObjective { edge_weight: 1, vertex_offset: 2 };
        assert!(max_density(&gen_complete(4), bad).is_err());
    }

    #[test]
    fn report_for_k5() {
        let r = density_report(&gen_complete(5)).unwrap();
        assert_eq!(r.mad, Rational::from_integer(4));
        assert_eq!(r.lemma1_value, Rational::new(10, 7));
        assert_eq!(ceil(r.lemma1_value), 2);
    }
}
