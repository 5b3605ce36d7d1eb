//! Page components for union embeddings, with an undo journal.
//!
//! Every page keeps a union-find over the vertices (union by size, no path
//! compression so that merges can be undone). Each root stores the edge set
//! of its component and the set of edges crossing any of them. A component
//! stays valid while the two sets are disjoint.

use crate::bitset::intersects;

struct Entry {
    page: usize,
    root: usize,
    child: Option<usize>,
    saved_edges: Vec<u64>,
    saved_cross: Vec<u64>,
}

pub(crate) struct UnionState {
    n: usize,
    words: usize,
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<u64>,
    cross: Vec<u64>,
    journal: Vec<Entry>,
}

impl UnionState {
    pub fn new(n: usize, pages: usize, words: usize) -> Self {
        UnionState {
            n,
            words,
            parent: (0..pages * n).map(|i| i % n).collect(),
            size: vec![1; pages * n],
            edges: vec![0; pages * n * words],
            cross: vec![0; pages * n * words],
            journal: Vec::new(),
        }
    }

    fn find(&self, page: usize, mut x: usize) -> usize {
        let base = page * self.n;
        while self.parent[base + x] != x {
            x = self.parent[base + x];
        }
        x
    }

    fn slot(&self, page: usize, root: usize) -> std::ops::Range<usize> {
        let start = (page * self.n + root) * self.words;
        start..start + self.words
    }

    /// Adds edge `e = uv` with crossing row `row` to `page` if the affected
    /// component stays crossing-free; records an undo entry on success.
    pub fn try_add(&mut self, page: usize, u: usize, v: usize, e: usize, row: &[u64]) -> bool {
        let (ru, rv) = (self.find(page, u), self.find(page, v));
        let (su, sv) = (self.slot(page, ru), self.slot(page, rv));
        if intersects(row, &self.edges[su.clone()]) || intersects(row, &self.edges[sv.clone()]) {
            return false;
        }
        if ru != rv && intersects(&self.edges[su], &self.cross[sv]) {
            return false;
        }
        let base = page * self.n;
        let (root, child) = if ru == rv {
            (ru, None)
        } else if self.size[base + ru] >= self.size[base + rv] {
            (ru, Some(rv))
        } else {
            (rv, Some(ru))
        };
        let rs = self.slot(page, root);
        self.journal.push(Entry {
            page,
            root,
            child,
            saved_edges: self.edges[rs.clone()].to_vec(),
            saved_cross: self.cross[rs.clone()].to_vec(),
        });
        if let Some(c) = child {
            self.parent[base + c] = root;
            self.size[base + root] += self.size[base + c];
            let cs = self.slot(page, c);
            for i in 0..self.words {
                self.edges[rs.start + i] |= self.edges[cs.start + i];
                self.cross[rs.start + i] |= self.cross[cs.start + i];
            }
        }
        self.edges[rs.start + e / 64] |= 1 << (e % 64);
        for (i, w) in row.iter().enumerate() {
            self.cross[rs.start + i] |= w;
        }
        true
    }

    pub fn undo(&mut self) {
        let entry = self.journal.pop().expect("undo without add");
        let base = entry.page * self.n;
        let rs = self.slot(entry.page, entry.root);
        self.edges[rs.clone()].copy_from_slice(&entry.saved_edges);
        self.cross[rs].copy_from_slice(&entry.saved_cross);
        if let Some(c) = entry.child {
            self.parent[base + c] = c;
            self.size[base + entry.root] -= self.size[base + c];
        }
    }
}
