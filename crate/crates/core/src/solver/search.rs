//! Decision procedures on a fixed spine: is there an assignment of the edges
//! to pages reaching value `k` for the requested parameter?

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use super::rollback::UnionState;
use super::Parameter;
use crate::bitset::intersects;
use crate::embedding::{CrossingTable, SpineOrder};
use crate::graph::Graph;

/// Node and time accounting shared by all workers of one solve.
pub(crate) struct Meter<'a> {
    pub nodes: u64,
    flushed: u64,
    interval: u64,
    shared: &'a AtomicU64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
}

const FLUSH_EVERY: u64 = 256;

impl<'a> Meter<'a> {
    pub fn new(
        shared: &'a AtomicU64,
        stop: &'a AtomicBool,
        node_limit: Option<u64>,
        deadline: Option<Instant>,
    ) -> Self {
        let interval = node_limit.map_or(FLUSH_EVERY, |l| l.clamp(1, FLUSH_EVERY));
        Meter { nodes: 0, flushed: 0, interval, shared, node_limit, deadline, stop }
    }

    /// Counts one search node; true once the budget is gone.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes - self.flushed < self.interval {
            return false;
        }
        self.flush();
        self.exhausted()
    }

    pub fn flush(&mut self) {
        self.shared.fetch_add(self.nodes - self.flushed, Ordering::Relaxed);
        self.flushed = self.nodes;
    }

    pub fn exhausted(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let over_nodes = self.node_limit.is_some_and(|l| self.shared.load(Ordering::Relaxed) >= l);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        over_nodes || over_time
    }
}

pub(crate) enum Decision {
    /// Page label per edge.
    Yes(Vec<usize>),
    No,
    Aborted,
}

/// Crossing relation under one spine plus the static edge order.
pub(crate) struct SpineContext<'g> {
    pub graph: &'g Graph,
    pub table: CrossingTable,
    /// Edges by descending crossing degree, ties by edge order.
    pub order: Vec<usize>,
}

impl<'g> SpineContext<'g> {
    pub fn new(graph: &'g Graph, spine: &SpineOrder) -> Self {
        let table = CrossingTable::new(graph, spine);
        let mut order: Vec<usize> = (0..graph.m()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(table.crossing_degree(i)));
        SpineContext { graph, table, order }
    }

    fn row(&self, e: usize) -> &[u64] {
        self.table.row(e).expect("solver builds the crossing matrix")
    }
}

/// Value of a complete assignment for the parameter.
pub(crate) fn measure(graph: &Graph, labels: &[usize], parameter: Parameter) -> usize {
    let pages = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    match parameter {
        Parameter::Pn | Parameter::PnUnion => pages,
        Parameter::PnLocal => {
            let mut seen = vec![Vec::new(); graph.n()];
            for (id, &p) in labels.iter().enumerate() {
                let e = graph.edge(id);
                for x in [e.u, e.v] {
                    if !seen[x].contains(&p) {
                        seen[x].push(p);
                    }
                }
            }
            seen.iter().map(Vec::len).max().unwrap_or(0)
        }
    }
}

pub(crate) fn decide(ctx: &SpineContext, parameter: Parameter, k: usize, meter: &mut Meter) -> Decision {
    if ctx.graph.m() == 0 {
        return Decision::Yes(Vec::new());
    }
    if k == 0 {
        return Decision::No;
    }
    match parameter {
        Parameter::Pn => Coloring::new(ctx, k).run(meter),
        Parameter::PnLocal => Local::new(ctx, k).run(meter),
        Parameter::PnUnion => Union::new(ctx, k).run(meter),
    }
}

/// Greedy DSATUR coloring of the conflict graph: an upper bound on the pages
/// needed on this spine.
pub(crate) fn greedy_pages(ctx: &SpineContext) -> Vec<usize> {
    let m = ctx.graph.m();
    let colors = (0..m).map(|e| ctx.table.crossing_degree(e)).max().unwrap_or(0) + 1;
    let mut c = Coloring::new(ctx, colors);
    for _ in 0..m {
        let e = c.pick();
        let color = (0..).find(|&col| c.sat[e * c.k + col] == 0).expect("max degree + 1 colors suffice");
        c.assign(e, color);
    }
    c.color
}

/// Exact k-coloring of the crossing graph by DSATUR branching.
struct Coloring<'c, 'g> {
    ctx: &'c SpineContext<'g>,
    k: usize,
    color: Vec<usize>,
    /// `sat[e * k + c]`: colored crossing partners of `e` with color `c`.
    sat: Vec<u32>,
    distinct: Vec<usize>,
    used: Vec<usize>,
}

impl<'c, 'g> Coloring<'c, 'g> {
    fn new(ctx: &'c SpineContext<'g>, k: usize) -> Self {
        let m = ctx.graph.m();
        Coloring { ctx, k, color: vec![usize::MAX; m], sat: vec![0; m * k], distinct: vec![0; m], used: vec![0] }
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        for &e in &self.ctx.order {
            if self.color[e] == usize::MAX && (best == usize::MAX || self.distinct[e] > self.distinct[best]) {
                best = e;
            }
        }
        best
    }

    fn assign(&mut self, e: usize, c: usize) {
        self.color[e] = c;
        let used = *self.used.last().unwrap();
        self.used.push(used.max(c + 1));
        for f in crate::bitset::iter_words(self.ctx.row(e)) {
            let s = &mut self.sat[f * self.k + c];
            *s += 1;
            if *s == 1 {
                self.distinct[f] += 1;
            }
        }
    }

    fn unassign(&mut self, e: usize) {
        let c = std::mem::replace(&mut self.color[e], usize::MAX);
        self.used.pop();
        for f in crate::bitset::iter_words(self.ctx.row(e)) {
            let s = &mut self.sat[f * self.k + c];
            *s -= 1;
            if *s == 0 {
                self.distinct[f] -= 1;
            }
        }
    }

    fn run(mut self, meter: &mut Meter) -> Decision {
        match self.rec(self.ctx.graph.m(), meter) {
            Some(true) => Decision::Yes(self.color),
            Some(false) => Decision::No,
            None => Decision::Aborted,
        }
    }

    fn rec(&mut self, left: usize, meter: &mut Meter) -> Option<bool> {
        if left == 0 {
            return Some(true);
        }
        if meter.tick() {
            return None;
        }
        let e = self.pick();
        let limit = (*self.used.last().unwrap() + 1).min(self.k);
        for c in 0..limit {
            if self.sat[e * self.k + c] != 0 {
                continue;
            }
            self.assign(e, c);
            match self.rec(left - 1, meter) {
                Some(false) => self.unassign(e),
                done => return done,
            }
        }
        Some(false)
    }
}

/// Book embeddings in which every vertex meets at most `k` pages.
struct Local<'c, 'g> {
    ctx: &'c SpineContext<'g>,
    k: usize,
    label: Vec<usize>,
    page_edges: Vec<Vec<u64>>,
    /// `at[v * max_pages + p]`: edges of page `p` at `v`.
    at: Vec<u32>,
    locality: Vec<usize>,
    max_pages: usize,
    pages: usize,
}

impl<'c, 'g> Local<'c, 'g> {
    /// Every page is outerplanar, so `|E(P)| <= 2|V(P)| - 3`; summing over
    /// the pages gives `m <= 2 k n' - 3 p` with `n'` the non-isolated
    /// vertices, which caps the number of pages.
    fn new(ctx: &'c SpineContext<'g>, k: usize) -> Self {
        let g = ctx.graph;
        let n_used = (0..g.n()).filter(|&v| g.degree(v) > 0).count() as i64;
        let slack = 2 * k as i64 * n_used - g.m() as i64;
        let max_pages = if slack < 0 { 0 } else { (slack / 3) as usize }.min(g.m());
        let words = ctx.table.words();
        Local {
            ctx,
            k,
            label: vec![usize::MAX; g.m()],
            page_edges: vec![vec![0; words]; max_pages],
            at: vec![0; g.n() * max_pages],
            locality: vec![0; g.n()],
            max_pages,
            pages: 0,
        }
    }

    fn run(mut self, meter: &mut Meter) -> Decision {
        if self.max_pages == 0 {
            return Decision::No;
        }
        match self.rec(0, meter) {
            Some(true) => Decision::Yes(self.label),
            Some(false) => Decision::No,
            None => Decision::Aborted,
        }
    }

    fn fits(&self, x: usize, p: usize) -> bool {
        self.at[x * self.max_pages + p] > 0 || self.locality[x] < self.k
    }

    fn touch(&mut self, x: usize, p: usize, add: bool) {
        let slot = &mut self.at[x * self.max_pages + p];
        if add {
            *slot += 1;
            if *slot == 1 {
                self.locality[x] += 1;
            }
        } else {
            *slot -= 1;
            if *slot == 0 {
                self.locality[x] -= 1;
            }
        }
    }

    fn rec(&mut self, depth: usize, meter: &mut Meter) -> Option<bool> {
        let Some(&e) = self.ctx.order.get(depth) else {
            return Some(true);
        };
        if meter.tick() {
            return None;
        }
        let edge = self.ctx.graph.edge(e);
        let limit = (self.pages + 1).min(self.max_pages);
        for p in 0..limit {
            if !self.fits(edge.u, p) || !self.fits(edge.v, p) || intersects(self.ctx.row(e), &self.page_edges[p]) {
                continue;
            }
            let opened = p == self.pages;
            if opened {
                self.pages += 1;
            }
            self.label[e] = p;
            self.page_edges[p][e / 64] |= 1 << (e % 64);
            self.touch(edge.u, p, true);
            self.touch(edge.v, p, true);
            match self.rec(depth + 1, meter) {
                Some(false) => {}
                done => return done,
            }
            self.touch(edge.u, p, false);
            self.touch(edge.v, p, false);
            self.page_edges[p][e / 64] &= !(1 << (e % 64));
            self.label[e] = usize::MAX;
            if opened {
                self.pages -= 1;
            }
        }
        Some(false)
    }
}

/// Union embeddings on at most `k` pages.
struct Union<'c, 'g> {
    ctx: &'c SpineContext<'g>,
    k: usize,
    label: Vec<usize>,
    state: UnionState,
    pages: usize,
}

impl<'c, 'g> Union<'c, 'g> {
    fn new(ctx: &'c SpineContext<'g>, k: usize) -> Self {
        let g = ctx.graph;
        let k = k.min(g.m());
        Union { ctx, k, label: vec![usize::MAX; g.m()], state: UnionState::new(g.n(), k, ctx.table.words()), pages: 0 }
    }

    fn run(mut self, meter: &mut Meter) -> Decision {
        match self.rec(0, meter) {
            Some(true) => Decision::Yes(self.label),
            Some(false) => Decision::No,
            None => Decision::Aborted,
        }
    }

    fn rec(&mut self, depth: usize, meter: &mut Meter) -> Option<bool> {
        let Some(&e) = self.ctx.order.get(depth) else {
            return Some(true);
        };
        if meter.tick() {
            return None;
        }
        let edge = self.ctx.graph.edge(e);
        let row = self.ctx.row(e);
        for p in 0..(self.pages + 1).min(self.k) {
            if !self.state.try_add(p, edge.u, edge.v, e, row) {
                continue;
            }
            let opened = p == self.pages;
            if opened {
                self.pages += 1;
            }
            self.label[e] = p;
            match self.rec(depth + 1, meter) {
                Some(false) => {}
                done => return done,
            }
            self.label[e] = usize::MAX;
            if opened {
                self.pages -= 1;
            }
            self.state.undo();
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_complete_bipartite, gen_path};

    fn decide_once(g: &Graph, spine: &SpineOrder, p: Parameter, k: usize) -> Option<Vec<usize>> {
        let (shared, stop) = (AtomicU64::new(0), AtomicBool::new(false));
        let mut meter = Meter::new(&shared, &stop, None, None);
        match decide(&SpineContext::new(g, spine), p, k, &mut meter) {
            Decision::Yes(l) => Some(l),
            Decision::No => None,
            Decision::Aborted => panic!("no budget set"),
        }
    }

    #[test]
    fn k5_on_its_cycle() {
        let g = gen_complete(5);
        let s = SpineOrder::identity(5);
        assert!(decide_once(&g, &s, Parameter::Pn, 2).is_none());
        let labels = decide_once(&g, &s, Parameter::Pn, 3).unwrap();
        assert_eq!(measure(&g, &labels, Parameter::Pn), 3);
        assert!(decide_once(&g, &s, Parameter::PnUnion, 2).is_none());
        assert!(decide_once(&g, &s, Parameter::PnLocal, 1).is_none());
        let labels = decide_once(&g, &s, Parameter::PnLocal, 2).unwrap();
        assert_eq!(measure(&g, &labels, Parameter::PnLocal), 2);
    }

    #[test]
    fn k33_union_on_alternating_spine() {
        let g = gen_complete_bipartite(3, 3);
        // Spine 0 3 1 4 2 5 alternates the sides.
        let s = SpineOrder::new(vec![0, 3, 1, 4, 2, 5]).unwrap();
        let union = (1..=3).find(|&k| decide_once(&g, &s, Parameter::PnUnion, k).is_some());
        let book = (1..=3).find(|&k| decide_once(&g, &s, Parameter::Pn, k).is_some());
        assert!(union <= book);
    }

    #[test]
    fn path_in_order_is_one_page() {
        let g = gen_path(6);
        let s = SpineOrder::identity(6);
        for p in [Parameter::Pn, Parameter::PnLocal, Parameter::PnUnion] {
            assert!(decide_once(&g, &s, p, 1).is_some());
        }
    }

    #[test]
    fn greedy_is_proper() {
        let g = gen_complete(7);
        let s = SpineOrder::new(vec![0, 3, 6, 2, 5, 1, 4]).unwrap();
        let ctx = SpineContext::new(&g, &s);
        let colors = greedy_pages(&ctx);
        for i in 0..g.m() {
            for j in 0..g.m() {
                if ctx.table.crosses(i, j) {
                    assert_ne!(colors[i], colors[j]);
                }
            }
        }
    }

    #[test]
    fn node_limit_aborts() {
        let g = gen_complete(8);
        let ctx = SpineContext::new(&g, &SpineOrder::identity(8));
        let (shared, stop) = (AtomicU64::new(0), AtomicBool::new(false));
        let mut meter = Meter::new(&shared, &stop, Some(1), None);
        assert!(matches!(decide(&ctx, Parameter::Pn, 3, &mut meter), Decision::Aborted));
    }
}
