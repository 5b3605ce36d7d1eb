use serde::Serialize;

use super::crossing::{crossing_free, interleaved};
use super::{LinearEmbedding, PagePartition};
use crate::graph::Edge;

/// Witnesses kept in a report unless the caller lifts the cap.
pub const DEFAULT_VIOLATION_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Two crossing edges on one page, in different components of that page.
    /// Breaks the book condition only.
    PageCrossing,
    /// Two crossing edges in the same component of a page. Breaks both the
    /// book and the union condition.
    ComponentCrossing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub edge1: Edge,
    pub edge2: Edge,
    pub page: usize,
    pub kind: ViolationKind,
}

/// Outcome of checking an embedding. `violations` is empty exactly when the
/// embedding is a book embedding; component crossings are listed first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_book: bool,
    pub is_union: bool,
    pub page_count: usize,
    pub locality: usize,
    pub per_vertex_locality: Vec<usize>,
    pub violations: Vec<Violation>,
    /// Set when more witnesses existed than the cap allowed.
    pub truncated: bool,
}

/// Number of distinct pages among the edges at each vertex.
pub fn locality_profile(emb: &LinearEmbedding) -> Vec<usize> {
    let g = emb.graph();
    let mut last_page = vec![usize::MAX; g.n()];
    let mut count = vec![0; g.n()];
    for (page, ids) in emb.pages().pages().into_iter().enumerate() {
        for id in ids {
            let e = g.edge(id);
            for x in [e.u, e.v] {
                if last_page[x] != page {
                    last_page[x] = page;
                    count[x] += 1;
                }
            }
        }
    }
    count
}

/// For every page, its connected components as lists of edge ids (each list
/// ascending, components ordered by their smallest edge id).
pub fn page_components(emb: &LinearEmbedding) -> Vec<Vec<Vec<usize>>> {
    let g = emb.graph();
    let mut scratch = ComponentScratch::new(g.n());
    emb.pages()
        .pages()
        .into_iter()
        .map(|ids| {
            let pairs: Vec<(usize, usize)> = ids.iter().map(|&i| (g.edge(i).u, g.edge(i).v)).collect();
            let labels = scratch.label(&pairs);
            let mut comps: Vec<Vec<usize>> = Vec::new();
            let mut slot = std::collections::HashMap::new();
            for (k, &id) in ids.iter().enumerate() {
                let c = *slot.entry(labels[k]).or_insert_with(|| {
                    comps.push(Vec::new());
                    comps.len() - 1
                });
                comps[c].push(id);
            }
            comps
        })
        .collect()
}

/// Moves every connected component of every page onto its own page. A union
/// embedding becomes a book embedding; the locality does not change because
/// a vertex lies in at most one component per page.
pub fn split_components(emb: &LinearEmbedding) -> LinearEmbedding {
    let mut labels = vec![0; emb.graph().m()];
    let mut next = 0;
    for comps in page_components(emb) {
        for comp in comps {
            for id in comp {
                labels[id] = next;
            }
            next += 1;
        }
    }
    LinearEmbedding::new(emb.graph().clone(), emb.spine().clone(), PagePartition::normalized(&labels))
        .expect("same graph and spine")
}

pub fn verify(emb: &LinearEmbedding) -> VerificationReport {
    verify_with_cap(emb, Some(DEFAULT_VIOLATION_CAP))
}

/// Checks the book condition (no crossing pair on a page) and the union
/// condition (no crossing pair inside a component of a page), and measures
/// locality. `cap` bounds the number of witnesses; `None` lists all of them.
pub fn verify_with_cap(emb: &LinearEmbedding, cap: Option<usize>) -> VerificationReport {
    let g = emb.graph();
    let pos = emb.spine().positions();
    let chord = |id: usize| {
        let e = g.edge(id);
        (pos[e.u], pos[e.v])
    };
    let cap = cap.unwrap_or(usize::MAX);
    let mut component_hits = Vec::new();
    let mut page_hits = Vec::new();
    let mut truncated = false;
    let mut is_union = true;
    let mut is_book = true;

    for (page, comps) in page_components(emb).into_iter().enumerate() {
        let mut page_union_ok = true;
        for comp in &comps {
            let mut ivs: Vec<_> = comp.iter().map(|&i| chord(i)).collect();
            if crossing_free(&mut ivs) {
                continue;
            }
            page_union_ok = false;
            'pairs: for (a, &i) in comp.iter().enumerate() {
                for &j in &comp[a + 1..] {
                    if interleaved(chord(i), chord(j)) {
                        if component_hits.len() == cap {
                            truncated = true;
                            break 'pairs;
                        }
                        component_hits.push(Violation {
                            edge1: g.edge(i),
                            edge2: g.edge(j),
                            page,
                            kind: ViolationKind::ComponentCrossing,
                        });
                    }
                }
            }
        }
        is_union &= page_union_ok;
        let mut ivs: Vec<_> = comps.iter().flatten().map(|&i| chord(i)).collect();
        if crossing_free(&mut ivs) {
            continue;
        }
        is_book = false;
        'outer: for (ca, a) in comps.iter().enumerate() {
            for b in &comps[ca + 1..] {
                for &i in a {
                    for &j in b {
                        if interleaved(chord(i), chord(j)) {
                            if page_hits.len() == cap {
                                truncated = true;
                                break 'outer;
                            }
                            page_hits.push(Violation {
                                edge1: g.edge(i.min(j)),
                                edge2: g.edge(i.max(j)),
                                page,
                                kind: ViolationKind::PageCrossing,
                            });
                        }
                    }
                }
            }
        }
    }

    let mut violations = component_hits;
    violations.extend(page_hits);
    if violations.len() > cap {
        violations.truncate(cap);
        truncated = true;
    }
    let per_vertex_locality = locality_profile(emb);
    VerificationReport {
        is_book,
        is_union,
        page_count: emb.page_count(),
        locality: per_vertex_locality.iter().copied().max().unwrap_or(0),
        per_vertex_locality,
        violations,
        truncated,
    }
}

/// Union-find over the vertices touched by one page, reset lazily between
/// pages so that many small pages stay cheap.
struct ComponentScratch {
    parent: Vec<usize>,
    stamp: Vec<u32>,
    round: u32,
}

impl ComponentScratch {
    fn new(n: usize) -> Self {
        ComponentScratch { parent: vec![0; n], stamp: vec![0; n], round: 0 }
    }

    fn find(&mut self, mut x: usize) -> usize {
        if self.stamp[x] != self.round {
            self.stamp[x] = self.round;
            self.parent[x] = x;
            return x;
        }
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Component representative of each edge.
    fn label(&mut self, pairs: &[(usize, usize)]) -> Vec<usize> {
        self.round += 1;
        for &(u, v) in pairs {
            let (a, b) = (self.find(u), self.find(v));
            if a != b {
                self.parent[a.max(b)] = a.min(b);
            }
        }
        pairs.iter().map(|&(u, _)| self.find(u)).collect()
    }
}
