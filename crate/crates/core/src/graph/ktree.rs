use std::collections::VecDeque;

use super::generate::stacked_faces;
use super::{Graph, GraphError};
use crate::rng::XorShift64Star;

/// A k-tree together with a construction order: the first `k + 1` vertices of
/// `order` form a clique and every later vertex attaches to a k-clique of its
/// predecessors. Reversed, `order` is a perfect elimination order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTree {
    pub k: usize,
    pub graph: Graph,
    pub order: Vec<usize>,
    /// `attachments[i]` is the clique `order[i]` was attached to (empty for
    /// the base clique).
    pub attachments: Vec<Vec<usize>>,
}

impl KTree {
    /// Every k-clique of the k-tree, each sorted. A k-tree on `n` vertices has
    /// `k + 1 + (n - k - 1) * k` of them.
    pub fn k_cliques(&self) -> Vec<Vec<usize>> {
        let k = self.k;
        let base: Vec<usize> = self.order[..=k].to_vec();
        let mut cliques: Vec<Vec<usize>> = (0..=k)
            .map(|skip| {
                let mut c: Vec<usize> = base.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                c.sort_unstable();
                c
            })
            .collect();
        for (pos, att) in self.attachments.iter().enumerate().skip(k + 1) {
            let v = self.order[pos];
            for skip in 0..k {
                let mut c: Vec<usize> = att.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                c.push(v);
                c.sort_unstable();
                cliques.push(c);
            }
        }
        cliques
    }

    pub fn expected_edge_count(k: usize, n: usize) -> usize {
        k * n - k * (k + 1) / 2
    }
}

/// Random k-tree on `n` vertices: start from `K_{k+1}`, then attach each new
/// vertex to a k-clique drawn from the seeded xorshift64* stream.
pub fn gen_k_tree(k: usize, n: usize, seed: u64) -> Result<KTree, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameters("k-tree needs k >= 1".into()));
    }
    if n < k + 1 {
        return Err(GraphError::InvalidParameters(format!("a {k}-tree needs at least {} vertices", k + 1)));
    }
    let mut rng = XorShift64Star::new(seed);
    let mut pairs = Vec::with_capacity(KTree::expected_edge_count(k, n));
    for u in 0..=k {
        for v in u + 1..=k {
            pairs.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<usize>> = (0..=k).map(|skip| (0..=k).filter(|&x| x != skip).collect()).collect();
    let mut attachments = vec![Vec::new(); k + 1];
    for v in k + 1..n {
        let c = cliques[rng.below(cliques.len())].clone();
        for &x in &c {
            pairs.push((x, v));
        }
        for skip in 0..k {
            let mut d: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
            d.push(v);
            cliques.push(d);
        }
        attachments.push(c);
    }
    Ok(KTree { k, graph: Graph::new(n, pairs)?, order: (0..n).collect(), attachments })
}

/// Recovers a construction order if `graph` is a k-tree, by repeatedly
/// deleting a simplicial vertex of degree k.
pub fn recognize_k_tree(graph: &Graph, k: usize) -> Option<KTree> {
    let n = graph.n();
    if k == 0 || n < k + 1 || graph.m() != KTree::expected_edge_count(k, n) {
        return None;
    }
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] == k).collect();
    let mut eliminated = Vec::with_capacity(n);
    let mut remaining = n;
    while remaining > k + 1 {
        let v = loop {
            let v = queue.pop_front()?;
            if removed[v] || degree[v] != k {
                continue;
            }
            let nb: Vec<usize> = graph.neighbors(v).iter().copied().filter(|&w| !removed[w]).collect();
            let clique = nb.iter().enumerate().all(|(i, &a)| nb[i + 1..].iter().all(|&b| graph.has_edge(a, b)));
            if clique {
                break v;
            }
        };
        let nb: Vec<usize> = graph.neighbors(v).iter().copied().filter(|&w| !removed[w]).collect();
        removed[v] = true;
        remaining -= 1;
        for &w in &nb {
            degree[w] -= 1;
            if degree[w] == k {
                queue.push_back(w);
            }
        }
        eliminated.push((v, nb));
    }
    let base: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let base_is_clique = base.iter().enumerate().all(|(i, &a)| base[i + 1..].iter().all(|&b| graph.has_edge(a, b)));
    if !base_is_clique {
        return None;
    }
    let mut order = base;
    let mut attachments = vec![Vec::new(); k + 1];
    for (v, nb) in eliminated.into_iter().rev() {
        order.push(v);
        attachments.push(nb);
    }
    Some(KTree { k, graph: graph.clone(), order, attachments })
}

/// `T_level` (level >= 1) viewed as a 3-tree: vertices 0..=3 form the base
/// `K_4` and every later vertex attaches to the face it was stacked into.
pub fn stacked_triangulation_ktree(level: u32, cap: u32) -> Result<KTree, GraphError> {
    if level == 0 {
        return Err(GraphError::InvalidParameters("T_0 is a triangle, not a 3-tree".into()));
    }
    let (graph, faces) = stacked_faces(level, cap)?;
    let n = graph.n();
    let mut attachments = vec![Vec::new(); 4];
    attachments.extend(faces.iter().skip(1).map(|f| f.to_vec()));
    Ok(KTree { k: 3, graph, order: (0..n).collect(), attachments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_complete;

    fn prefixes_are_k_trees(t: &KTree) {
        for len in t.k + 1..=t.graph.n() {
            let prefix: Vec<usize> = t.order[..len].to_vec();
            let sub = t.graph.induced(&prefix);
            assert!(recognize_k_tree(&sub, t.k).is_some(), "prefix {len} not a {}-tree", t.k);
        }
    }

    #[test]
    fn one_tree_is_a_tree() {
        for seed in 0..5 {
            let t = gen_k_tree(1, 5, seed).unwrap();
            assert_eq!(t.graph.m(), 4);
            assert_eq!(t.graph.components().len(), 1);
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(gen_k_tree(3, 10, 7).unwrap().graph.m(), 24);
        assert_eq!(gen_k_tree(2, 4, 7).unwrap().graph.m(), 5);
        for k in 1..=4 {
            for n in k + 1..=20 {
                let t = gen_k_tree(k, n, (n * 31 + k) as u64).unwrap();
                assert_eq!(t.graph.m(), KTree::expected_edge_count(k, n));
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(gen_k_tree(3, 15, 42).unwrap(), gen_k_tree(3, 15, 42).unwrap());
        assert_ne!(gen_k_tree(3, 15, 42).unwrap().graph, gen_k_tree(3, 15, 43).unwrap().graph);
    }

    #[test]
    fn every_prefix_is_a_k_tree() {
        for k in 1..=3 {
            prefixes_are_k_trees(&gen_k_tree(k, 14, 5).unwrap());
        }
    }

    #[test]
    fn clique_enumeration_counts() {
        let t = gen_k_tree(3, 9, 1).unwrap();
        let cliques = t.k_cliques();
        assert_eq!(cliques.len(), 4 + 5 * 3);
        for c in &cliques {
            assert!(c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| t.graph.has_edge(a, b))));
        }
    }

    #[test]
    fn recognition() {
        assert!(recognize_k_tree(&gen_complete(4), 3).is_some());
        assert!(recognize_k_tree(&gen_complete(4), 2).is_none());
        let c4 = crate::graph::gen_cycle(4);
        assert!(recognize_k_tree(&c4, 1).is_none());
        assert!(recognize_k_tree(&c4, 2).is_none());
        let t = gen_k_tree(2, 12, 9).unwrap();
        let r = recognize_k_tree(&t.graph, 2).unwrap();
        prefixes_are_k_trees(&r);
    }

    #[test]
    fn stacked_triangulation_is_a_3_tree() {
        let t = stacked_triangulation_ktree(2, 9).unwrap();
        assert_eq!(t.graph.n(), 11);
        prefixes_are_k_trees(&t);
        assert!(stacked_triangulation_ktree(0, 9).is_err());
    }
}
