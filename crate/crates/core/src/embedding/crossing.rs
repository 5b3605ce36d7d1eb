use super::SpineOrder;
use crate::graph::{Edge, Graph};

/// Above this many edges the pairwise crossing matrix is not materialized.
pub const DEFAULT_MATRIX_THRESHOLD: usize = 4096;

/// True iff the spine positions of two chords strictly interleave. Chords
/// sharing an endpoint never interleave.
#[inline]
pub fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = if a.0 < a.1 { a } else { (a.1, a.0) };
    let (b0, b1) = if b.0 < b.1 { b } else { (b.1, b.0) };
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

/// Whether `e1` and `e2` cross under `spine`.
pub fn crosses(e1: Edge, e2: Edge, spine: &SpineOrder) -> bool {
    interleaved((spine.position(e1.u), spine.position(e1.v)), (spine.position(e2.u), spine.position(e2.v)))
}

/// Whether a set of chords, given as position pairs, is pairwise
/// non-crossing. Runs a stack sweep: sorted by left end (longer first), a
/// crossing-free family is laminar.
pub fn crossing_free(intervals: &mut [(usize, usize)]) -> bool {
    for iv in intervals.iter_mut() {
        if iv.0 > iv.1 {
            *iv = (iv.1, iv.0);
        }
    }
    intervals.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for &(l, r) in intervals.iter() {
        while let Some(&(_, top_r)) = stack.last() {
            if top_r <= l {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&(top_l, top_r)) = stack.last() {
            if top_l < l && top_r < r {
                return false;
            }
        }
        stack.push((l, r));
    }
    true
}

/// Pairwise crossing relation of a graph's edges under a fixed spine: a bit
/// matrix when the graph is small enough, otherwise computed on demand.
#[derive(Debug, Clone)]
pub struct CrossingTable {
    m: usize,
    words: usize,
    chords: Vec<(usize, usize)>,
    matrix: Option<Vec<u64>>,
}

impl CrossingTable {
    pub fn new(graph: &Graph, spine: &SpineOrder) -> Self {
        Self::with_threshold(graph, spine, DEFAULT_MATRIX_THRESHOLD)
    }

    pub fn with_threshold(graph: &Graph, spine: &SpineOrder, threshold: usize) -> Self {
        let m = graph.m();
        let words = m.div_ceil(64);
        let chords: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (spine.position(e.u), spine.position(e.v));
                (a.min(b), a.max(b))
            })
            .collect();
        let matrix = (m <= threshold).then(|| {
            let mut bits = vec![0u64; m * words];
            for i in 0..m {
                for j in i + 1..m {
                    if interleaved(chords[i], chords[j]) {
                        bits[i * words + j / 64] |= 1 << (j % 64);
                        bits[j * words + i / 64] |= 1 << (i % 64);
                    }
                }
            }
            bits
        });
        CrossingTable { m, words, chords, matrix }
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Number of `u64` words per row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn chord(&self, i: usize) -> (usize, usize) {
        self.chords[i]
    }

    #[inline]
    pub fn crosses(&self, i: usize, j: usize) -> bool {
        match &self.matrix {
            Some(bits) => bits[i * self.words + j / 64] >> (j % 64) & 1 == 1,
            None => interleaved(self.chords[i], self.chords[j]),
        }
    }

    /// Crossing row of edge `i` as bitset words, when materialized.
    pub fn row(&self, i: usize) -> Option<&[u64]> {
        self.matrix.as_ref().map(|bits| &bits[i * self.words..(i + 1) * self.words])
    }

    pub fn crossing_degree(&self, i: usize) -> usize {
        match self.row(i) {
            Some(row) => row.iter().map(|w| w.count_ones() as usize).sum(),
            None => (0..self.m).filter(|&j| j != i && self.crosses(i, j)).count(),
        }
    }
}
