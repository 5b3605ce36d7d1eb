//! Cyclic page templates for complete graphs.
//!
//! Vertices `0..n` sit on a circle in index order. A template is a set of
//! chords; its copy under shift `j` adds `j` to both endpoints modulo `n` and
//! forms one page. The search looks for `t` templates whose copies under
//! shifts `0..s` partition the edges of `K_n` with every vertex on at most
//! `ℓ` pages.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::ConstructError;
use crate::embedding::{interleaved, verify, LinearEmbedding, SpineOrder};
use crate::graph::{gen_complete, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicTemplate {
    pub n: usize,
    /// Chords of each template at shift 0.
    pub templates: Vec<Vec<Edge>>,
    pub shifts: usize,
}

impl CyclicTemplate {
    fn shifted(&self, e: Edge, j: usize) -> Edge {
        Edge::new((e.u + j) % self.n, (e.v + j) % self.n)
    }

    /// Page `i * shifts + j` is template `i` under shift `j`.
    pub fn pages(&self) -> Vec<Vec<Edge>> {
        let mut pages = Vec::with_capacity(self.templates.len() * self.shifts);
        for t in &self.templates {
            for j in 0..self.shifts {
                pages.push(t.iter().map(|&e| self.shifted(e, j)).collect());
            }
        }
        pages
    }

    pub fn embedding(&self) -> Result<LinearEmbedding, ConstructError> {
        Ok(LinearEmbedding::from_pages(gen_complete(self.n), SpineOrder::identity(self.n), &self.pages())?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Cover the lexicographically smallest uncovered edge next.
    Lexicographic,
    /// Cover the longest uncovered chord (by circular distance) next.
    LongestFirst,
}

#[derive(Debug, Clone)]
pub struct TemplateQuery {
    pub n: usize,
    pub locality: usize,
    pub templates: usize,
    pub shifts: usize,
    pub order: EdgeOrder,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl TemplateQuery {
    pub fn new(n: usize, locality: usize, templates: usize, shifts: usize) -> Self {
        TemplateQuery {
            n,
            locality,
            templates,
            shifts,
            order: EdgeOrder::Lexicographic,
            node_limit: None,
            time_limit: Some(Duration::from_secs(600)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TemplateFound {
    pub template: CyclicTemplate,
    pub embedding: LinearEmbedding,
    pub nodes: u64,
}

pub fn template_search(
    n: usize,
    locality: usize,
    templates: usize,
    shifts: usize,
) -> Result<TemplateFound, ConstructError> {
    template_search_with(&TemplateQuery::new(n, locality, templates, shifts))
}

/// Backtracking over edges: the next uncovered edge must be the shift-`j`
/// copy of a new chord in some template `i`. Adding that chord claims all of
/// its `s` copies at once, so the chord must keep its template crossing-free,
/// its copies must be distinct and still uncovered, and no vertex may exceed
/// the locality. Templates are interchangeable, so a new template is only
/// opened at the next free index; with `s = n` every template may also be
/// rotated so that its first chord is taken at shift 0.
pub fn template_search_with(q: &TemplateQuery) -> Result<TemplateFound, ConstructError> {
    let (n, s, t) = (q.n, q.shifts, q.templates);
    let m = n * n.saturating_sub(1) / 2;
    if n < 2 || s == 0 || t == 0 || q.locality == 0 {
        return Err(ConstructError::InvalidParameters("need n >= 2 and positive locality, templates, shifts".into()));
    }
    if s > n {
        return Err(ConstructError::InvalidParameters(format!("{s} shifts exceed the {n} rotations")));
    }
    if m % s != 0 {
        return Err(ConstructError::InvalidParameters(format!("{m} edges cannot split into copies of {s} shifts")));
    }
    if m / s > t * (2 * n - 3) {
        return Err(ConstructError::InvalidParameters(format!(
            "{t} outerplanar templates on {n} vertices hold at most {} chords, need {}",
            t * (2 * n - 3),
            m / s
        )));
    }
    let mut search = Search::new(q);
    match search.run() {
        Step::Found => {}
        Step::Exhausted => return Err(ConstructError::TemplateNotFound),
        Step::OutOfBudget => return Err(ConstructError::TemplateTimeout(search.nodes)),
    }
    let template =
        CyclicTemplate { n, templates: search.chords.into_iter().filter(|c| !c.is_empty()).collect(), shifts: s };
    let embedding = template.embedding()?;
    let report = verify(&embedding);
    if !report.is_book || report.locality > q.locality {
        return Err(ConstructError::VerificationFailed("template copies".into()));
    }
    Ok(TemplateFound { template, embedding, nodes: search.nodes })
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    q: &'a TemplateQuery,
    id: Vec<usize>,
    covered: Vec<bool>,
    /// Edge ids in the order they are to be covered.
    order: Vec<usize>,
    edges: Vec<Edge>,
    chords: Vec<Vec<Edge>>,
    /// `on_page[v * pages + p]`: edges of page `p` at `v`.
    on_page: Vec<u32>,
    locality: Vec<usize>,
    pages: usize,
    nodes: u64,
    started: Instant,
}

impl<'a> Search<'a> {
    fn new(q: &'a TemplateQuery) -> Self {
        let n = q.n;
        let mut id = vec![usize::MAX; n * n];
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                id[u * n + v] = edges.len();
                id[v * n + u] = edges.len();
                edges.push(Edge::new(u, v));
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        if q.order == EdgeOrder::LongestFirst {
            let len = |e: Edge| (e.v - e.u).min(n - (e.v - e.u));
            order.sort_by_key(|&i| std::cmp::Reverse(len(edges[i])));
        }
        let pages = q.templates * q.shifts;
        Search {
            q,
            id,
            covered: vec![false; edges.len()],
            order,
            edges,
            chords: vec![Vec::new(); q.templates],
            on_page: vec![0; n * pages],
            locality: vec![0; n],
            pages,
            nodes: 0,
            started: Instant::now(),
        }
    }

    fn out_of_budget(&self) -> bool {
        if self.q.node_limit.is_some_and(|l| self.nodes >= l) {
            return true;
        }
        self.nodes.is_multiple_of(1024) && self.q.time_limit.is_some_and(|l| self.started.elapsed() >= l)
    }

    fn copy_id(&self, c: Edge, j: usize) -> usize {
        let n = self.q.n;
        self.id[(c.u + j) % n * n + (c.v + j) % n]
    }

    /// Claims the copies of chord `c` in template `i`, or leaves the state
    /// untouched and returns false.
    fn place(&mut self, i: usize, c: Edge) -> bool {
        let (n, s) = (self.q.n, self.q.shifts);
        if self.chords[i].iter().any(|d| interleaved((d.u, d.v), (c.u, c.v))) {
            return false;
        }
        let ids: Vec<usize> = (0..s).map(|j| self.copy_id(c, j)).collect();
        for (a, &x) in ids.iter().enumerate() {
            if self.covered[x] || ids[..a].contains(&x) {
                return false;
            }
        }
        let mut ok = true;
        let mut applied = 0;
        for j in 0..s {
            let p = i * s + j;
            for x in [(c.u + j) % n, (c.v + j) % n] {
                let slot = &mut self.on_page[x * self.pages + p];
                *slot += 1;
                if *slot == 1 {
                    self.locality[x] += 1;
                    ok &= self.locality[x] <= self.q.locality;
                }
            }
            applied = j + 1;
            if !ok {
                break;
            }
        }
        if !ok {
            self.unplace_copies(i, c, applied);
            return false;
        }
        for &x in &ids {
            self.covered[x] = true;
        }
        self.chords[i].push(c);
        true
    }

    fn unplace_copies(&mut self, i: usize, c: Edge, copies: usize) {
        let (n, s) = (self.q.n, self.q.shifts);
        for j in 0..copies {
            let p = i * s + j;
            for x in [(c.u + j) % n, (c.v + j) % n] {
                let slot = &mut self.on_page[x * self.pages + p];
                *slot -= 1;
                if *slot == 0 {
                    self.locality[x] -= 1;
                }
            }
        }
    }

    fn unplace(&mut self, i: usize) {
        let c = self.chords[i].pop().expect("placed chord");
        for j in 0..self.q.shifts {
            let x = self.copy_id(c, j);
            self.covered[x] = false;
        }
        self.unplace_copies(i, c, self.q.shifts);
    }

    fn run(&mut self) -> Step {
        let Some(&next) = self.order.iter().find(|&&e| !self.covered[e]) else {
            return Step::Found;
        };
        self.nodes += 1;
        if self.out_of_budget() {
            return Step::OutOfBudget;
        }
        let (n, s) = (self.q.n, self.q.shifts);
        let e = self.edges[next];
        let opened = self.chords.iter().take_while(|c| !c.is_empty()).count();
        for i in 0..(opened + 1).min(self.q.templates) {
            let pinned = i == opened && s == n;
            for j in 0..if pinned { 1 } else { s } {
                let c = Edge::new((e.u + n - j) % n, (e.v + n - j) % n);
                if !self.place(i, c) {
                    continue;
                }
                match self.run() {
                    Step::Exhausted => self.unplace(i),
                    done => return done,
                }
            }
        }
        Step::Exhausted
    }
}
