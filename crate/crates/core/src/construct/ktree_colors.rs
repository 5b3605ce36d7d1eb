//! The proper `(k+1)`-coloring of a k-tree and its color-pair trees.

use serde::Serialize;

use super::ConstructError;
use crate::bounds::is_forest;
use crate::graph::{Edge, KTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairTree {
    pub colors: (usize, usize),
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KTreeColoring {
    pub k: usize,
    pub colors: Vec<usize>,
    /// Nonempty color-pair classes, ordered by color pair.
    pub pair_trees: Vec<PairTree>,
}

fn not_ktree(msg: String) -> ConstructError {
    ConstructError::NotKTree(msg)
}

/// Checks the recorded construction order against the graph.
fn check_ktree(kt: &KTree) -> Result<(), ConstructError> {
    let (k, g) = (kt.k, &kt.graph);
    let n = g.n();
    if kt.order.len() != n || n < k + 1 || kt.attachments.len() != n {
        return Err(not_ktree(format!("order covers {} of {n} vertices", kt.order.len())));
    }
    if g.m() != KTree::expected_edge_count(k, n) {
        return Err(not_ktree(format!(
            "{} edges, a {k}-tree on {n} vertices has {}",
            g.m(),
            KTree::expected_edge_count(k, n)
        )));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in kt.order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(not_ktree("order is not a permutation".into()));
        }
        pos[v] = i;
    }
    let base = &kt.order[..=k];
    for (a, &x) in base.iter().enumerate() {
        if base[a + 1..].iter().any(|&y| !g.has_edge(x, y)) {
            return Err(not_ktree("first k + 1 vertices are not a clique".into()));
        }
    }
    for i in k + 1..n {
        let (v, att) = (kt.order[i], &kt.attachments[i]);
        let ok = att.len() == k
            && att.iter().all(|&x| x < n && pos[x] < i && g.has_edge(x, v))
            && att.iter().enumerate().all(|(a, &x)| att[a + 1..].iter().all(|&y| g.has_edge(x, y)));
        if !ok {
            return Err(not_ktree(format!("vertex {v} is not attached to a {k}-clique of earlier vertices")));
        }
    }
    Ok(())
}

/// Colors the base clique `0..=k` and gives every later vertex the one color
/// missing from its attachment clique. Any two color classes induce a tree,
/// and every vertex lies in exactly `k` of these trees.
pub fn ktree_color_partition(kt: &KTree) -> Result<KTreeColoring, ConstructError> {
    check_ktree(kt)?;
    let (k, g) = (kt.k, &kt.graph);
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    for (c, &v) in kt.order[..=k].iter().enumerate() {
        colors[v] = c;
    }
    for i in k + 1..n {
        let mut used = vec![false; k + 1];
        for &x in &kt.attachments[i] {
            used[colors[x]] = true;
        }
        colors[kt.order[i]] = used.iter().position(|&u| !u).expect("k colors on a k-clique");
    }

    let mut groups = vec![Vec::new(); (k + 1) * (k + 1)];
    for e in g.edges() {
        let (a, b) = (colors[e.u].min(colors[e.v]), colors[e.u].max(colors[e.v]));
        if a == b {
            return Err(not_ktree(format!("edge {e} joins two vertices of color {a}")));
        }
        groups[a * (k + 1) + b].push(*e);
    }
    let mut pair_trees = Vec::new();
    let mut membership = vec![0; n];
    for (slot, edges) in groups.into_iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        let colors = (slot / (k + 1), slot % (k + 1));
        let mut support: Vec<usize> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        support.sort_unstable();
        support.dedup();
        // A forest with one edge fewer than vertices is a single tree.
        if !is_forest(n, &edges) || edges.len() + 1 != support.len() {
            return Err(not_ktree(format!("color pair {colors:?} does not induce a tree")));
        }
        for &v in &support {
            membership[v] += 1;
        }
        pair_trees.push(PairTree { colors, edges });
    }
    if let Some(v) = (0..n).find(|&v| membership[v] != k) {
        return Err(not_ktree(format!("vertex {v} lies in {} pair trees, expected {k}", membership[v])));
    }
    Ok(KTreeColoring { k, colors, pair_trees })
}
