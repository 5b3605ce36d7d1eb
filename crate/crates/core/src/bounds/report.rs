//! All bounds known for a graph, with the rule and witness behind each.

use std::fmt::Write as _;

use serde::Serialize;

use super::{arboricity_partition, ceil, density_report, refined_local_bound, BoundsError, Rational};
use crate::construct::{
    compact_star_forests, kn_zigzag, orientation_stars, star_forests_from_forests, union_embedding_from_star_forests,
    Orientation,
};
use crate::embedding::{verify, LinearEmbedding, SpineOrder};
use crate::graph::Graph;
use crate::solver::greedy_book_embedding;

/// Above this many edges the outerplanar density bound is skipped: its exact
/// computation runs one min cut per edge.
pub const DENSITY_EDGE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    PnLocal,
    PnUnion,
    PnClassic,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::PnLocal, Target::PnUnion, Target::PnClassic];

    pub fn name(self) -> &'static str {
        match self {
            Target::PnLocal => "pn_local",
            Target::PnUnion => "pn_union",
            Target::PnClassic => "pn_classic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub value: usize,
    pub side: Side,
    pub rule: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub target: Target,
    pub lower: usize,
    pub upper: Option<usize>,
    pub provenance: Vec<Provenance>,
}

impl BoundReport {
    fn new(target: Target) -> Self {
        BoundReport { target, lower: 0, upper: None, provenance: Vec::new() }
    }

    fn add(&mut self, side: Side, value: usize, rule: &str, witness: String) {
        match side {
            Side::Lower => self.lower = self.lower.max(value),
            Side::Upper => self.upper = Some(self.upper.map_or(value, |u| u.min(value))),
        }
        self.provenance.push(Provenance { value, side, rule: rule.into(), witness });
    }
}

fn subset(vs: &[usize]) -> String {
    let mut s = String::from("H = {");
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        write!(s, "{v}").unwrap();
    }
    s.push('}');
    s
}

fn ratio(r: Rational) -> String {
    r.to_string()
}

pub fn bound_report(graph: &Graph, target: Target, pn_lower: Option<usize>) -> Result<BoundReport, BoundsError> {
    Ok(bound_reports(graph, pn_lower)?.into_iter().find(|r| r.target == target).expect("all targets reported"))
}

/// Reports for `pn_local`, `pn_union` and `pn_classic`, in that order.
/// `pn_lower`, when given, is trusted as a lower bound on the classical page
/// number. Upper bounds come only from constructions that pass the verifier.
pub fn bound_reports(graph: &Graph, pn_lower: Option<usize>) -> Result<Vec<BoundReport>, BoundsError> {
    let mut local = BoundReport::new(Target::PnLocal);
    let mut union = BoundReport::new(Target::PnUnion);
    let mut classic = BoundReport::new(Target::PnClassic);
    let n = graph.n();

    if graph.m() == 0 {
        for r in [&mut local, &mut union, &mut classic] {
            r.add(Side::Upper, 0, "no-edges", "empty page partition".into());
        }
        return Ok(vec![local, union, classic]);
    }

    let dens = if graph.m() <= DENSITY_EDGE_LIMIT { Some(density_report(graph)?) } else { None };
    let mad = match &dens {
        Some(d) => (d.mad, d.mad_witness.clone()),
        None => {
            let m = super::mad(graph)?;
            (m.value, m.witness)
        }
    };
    let quarter = ceil(mad.0 / 4);
    let mad_note = format!("mad = {} on {}", ratio(mad.0), subset(&mad.1));
    for r in [&mut local, &mut union, &mut classic] {
        r.add(Side::Lower, quarter, "mad/4", mad_note.clone());
    }
    if let Some(d) = &dens {
        let l1 = ceil(d.lemma1_value);
        let note = format!("|E(H)|/(2|V(H)|-3) = {} on {}", ratio(d.lemma1_value), subset(&d.lemma1_witness));
        for r in [&mut local, &mut union, &mut classic] {
            r.add(Side::Lower, l1, "outerplanar-density", note.clone());
        }
    }
    if let Some(p) = pn_lower {
        classic.add(Side::Lower, p, "given", format!("pn >= {p} supplied by caller"));
        let refined = refined_local_bound(graph, p);
        local.add(
            Side::Lower,
            refined,
            "refined-density",
            format!("|E| = {} > 2k|V| - 3 max(pn, k) for k < {refined}, |V| = {n}, pn >= {p}", graph.m()),
        );
    }
    union.add(Side::Lower, local.lower, "chain", "pn_union >= pn_local".into());
    classic.add(Side::Lower, union.lower, "chain", "pn >= pn_union".into());

    let identity = SpineOrder::identity(n);
    if let Some(emb) = greedy_book_embedding(graph, &identity) {
        classic.add(
            Side::Upper,
            emb.page_count(),
            "greedy-coloring",
            "identity spine, DSATUR on crossing graph".into(),
        );
    }
    if graph.is_complete() {
        let emb = kn_zigzag(n).expect("n >= 2 when there are edges");
        classic.add(Side::Upper, emb.page_count(), "zigzag", format!("zigzag paths of K_{n}"));
    }
    let fp = arboricity_partition(graph);
    let sfp = compact_star_forests(&star_forests_from_forests(&fp, graph), graph);
    let star_union = union_embedding_from_star_forests(&sfp, graph).expect("partition of the edges");
    union.add(
        Side::Upper,
        checked(&star_union, true).page_count(),
        "star-forests",
        format!("{} forests split into {} star forests", fp.arboricity(), sfp.star_forests.len()),
    );
    if let Some(u) = classic.upper {
        union.add(Side::Upper, u, "chain", "pn_union <= pn".into());
    }
    let stars = orientation_stars(graph, Orientation::Degeneracy).expect("degeneracy orientation always exists");
    let star_local = crate::construct::local_embedding_from_stars(graph, &stars).expect("stars partition the edges");
    let (_, degeneracy) = graph.degeneracy_order();
    local.add(
        Side::Upper,
        verify(checked(&star_local, false)).locality,
        "degeneracy-stars",
        format!("one star per vertex toward earlier neighbors, degeneracy {degeneracy}"),
    );
    if let Some(u) = union.upper {
        local.add(Side::Upper, u, "chain", "pn_local <= pn_union".into());
    }
    Ok(vec![local, union, classic])
}

fn checked(emb: &LinearEmbedding, union: bool) -> &LinearEmbedding {
    let r = verify(emb);
    assert!(if union { r.is_union } else { r.is_book }, "construction failed verification");
    emb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_stacked_triangulation};

    #[test]
    fn k7_with_classical_bound() {
        let reports = bound_reports(&gen_complete(7), Some(4)).unwrap();
        let local = &reports[0];
        assert_eq!(local.target, Target::PnLocal);
        assert_eq!(local.lower, 3);
        assert!(local.provenance.iter().any(|p| p.rule == "refined-density" && p.value == 3));
        assert_eq!(reports[2].upper, Some(4));
        for r in &reports {
            assert!(r.lower <= r.upper.unwrap());
        }
    }

    #[test]
    fn every_value_has_provenance() {
        let g = gen_stacked_triangulation(2).unwrap();
        for r in bound_reports(&g, None).unwrap() {
            assert!(r.provenance.iter().any(|p| p.side == Side::Lower && p.value == r.lower));
            assert!(r.provenance.iter().any(|p| p.side == Side::Upper && Some(p.value) == r.upper));
        }
    }

    #[test]
    fn edgeless() {
        let r = bound_report(&Graph::empty(4), Target::PnClassic, None).unwrap();
        assert_eq!((r.lower, r.upper), (0, Some(0)));
    }
}
