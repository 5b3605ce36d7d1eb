//! Brute-force page numbers for tiny graphs, sharing no code with the
//! verifier or the solver: every spine, every partition of the edges.

use super::{Parameter, SolveError};
use crate::graph::Graph;
use crate::perm::next_permutation;

/// Hard vertex limit of the oracle.
pub const ORACLE_MAX_VERTICES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleValues {
    pub pn: usize,
    pub pn_local: usize,
    pub pn_union: usize,
}

impl OracleValues {
    pub fn get(&self, p: Parameter) -> usize {
        match p {
            Parameter::Pn => self.pn,
            Parameter::PnLocal => self.pn_local,
            Parameter::PnUnion => self.pn_union,
        }
    }
}

pub fn oracle(graph: &Graph, parameter: Parameter) -> Result<usize, SolveError> {
    Ok(oracle_all(graph)?.get(parameter))
}

fn strictly_between(a: usize, x: usize, b: usize) -> bool {
    a < x && x < b
}

/// Two chords with position pairs `(a, b)` and `(c, d)` (each `lo < hi`)
/// cross when exactly one endpoint of one lies strictly inside the other.
fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    strictly_between(a, c, b) != strictly_between(a, d, b)
}

pub fn oracle_all(graph: &Graph) -> Result<OracleValues, SolveError> {
    let n = graph.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(SolveError::OracleTooLarge(n));
    }
    let m = graph.m();
    if m == 0 {
        return Ok(OracleValues { pn: 0, pn_local: 0, pn_union: 0 });
    }
    let ends: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut best = OracleValues { pn: usize::MAX, pn_local: usize::MAX, pn_union: usize::MAX };
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        // perm[i] is the position of vertex i.
        let chord = |&(u, v): &(usize, usize)| (perm[u].min(perm[v]), perm[u].max(perm[v]));
        let chords: Vec<(usize, usize)> = ends.iter().map(chord).collect();
        let mut crossing_pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if chords_cross(chords[i], chords[j]) {
                    crossing_pairs.push((i, j));
                }
            }
        }
        for_each_partition(m, |labels, pages| {
            let book = crossing_pairs.iter().all(|&(i, j)| labels[i] != labels[j]);
            if book {
                best.pn = best.pn.min(pages);
                best.pn_local = best.pn_local.min(locality(&ends, labels, n));
                best.pn_union = best.pn_union.min(pages);
            } else if pages < best.pn_union {
                let comp = page_components(&ends, labels);
                if crossing_pairs.iter().all(|&(i, j)| labels[i] != labels[j] || comp[i] != comp[j]) {
                    best.pn_union = pages;
                }
            }
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

fn locality(ends: &[(usize, usize)], labels: &[usize], n: usize) -> usize {
    let mut pages = vec![0u64; n];
    for (k, &(u, v)) in ends.iter().enumerate() {
        pages[u] |= 1 << labels[k];
        pages[v] |= 1 << labels[k];
    }
    pages.iter().map(|p| p.count_ones() as usize).max().unwrap_or(0)
}

/// Component id of every edge within its page, by repeated relabeling.
fn page_components(ends: &[(usize, usize)], labels: &[usize]) -> Vec<usize> {
    let m = ends.len();
    let mut comp: Vec<usize> = (0..m).collect();
    loop {
        let mut changed = false;
        for i in 0..m {
            for j in 0..m {
                let share = ends[i].0 == ends[j].0
                    || ends[i].0 == ends[j].1
                    || ends[i].1 == ends[j].0
                    || ends[i].1 == ends[j].1;
                if labels[i] == labels[j] && share && comp[j] < comp[i] {
                    comp[i] = comp[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    comp
}

/// Calls `f(labels, pages)` for every set partition of `0..m`, as restricted
/// growth strings.
fn for_each_partition(m: usize, mut f: impl FnMut(&[usize], usize)) {
    let mut labels = vec![0usize; m];
    // max_prefix[i] = max(labels[..i]) + 1 = pages used before position i.
    let mut max_prefix = vec![0usize; m + 1];
    for i in 0..m {
        max_prefix[i + 1] = 1;
    }
    loop {
        let pages = labels.iter().max().map_or(0, |&x| x + 1);
        f(&labels, pages);
        let mut i = m;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            if labels[i] < max_prefix[i] {
                labels[i] += 1;
                break;
            }
        }
        labels[i + 1..].fill(0);
        for j in i..m {
            max_prefix[j + 1] = max_prefix[j].max(labels[j] + 1);
        }
    }
}
