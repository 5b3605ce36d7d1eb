//! Test corpora: exhaustive non-isomorphic small graphs and seeded random graphs.

use std::collections::HashSet;

use super::Graph;
use crate::perm::next_permutation;
use crate::rng::XorShift64Star;

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices (`n <= 7`), in increasing order of the representative's edge
/// bitmask. Isolated vertices are allowed, so graphs on fewer vertices
/// appear padded.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is limited to 7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = i;
        pair_index[v][u] = i;
    }
    // For every vertex permutation, the induced permutation of pair slots.
    let mut slot_maps = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        slot_maps.push(pairs.iter().map(|&(u, v)| pair_index[p[u]][p[v]]).collect::<Vec<_>>());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let total: u64 = 1 << pairs.len();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0..total {
        if seen.contains(&mask) {
            continue;
        }
        for map in &slot_maps {
            let mut image = 0u64;
            for (slot, &target) in map.iter().enumerate() {
                if mask >> slot & 1 == 1 {
                    image |= 1 << target;
                }
            }
            seen.insert(image);
        }
        let edges = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        reps.push(Graph::new(n, edges).expect("simple by construction"));
    }
    reps
}

/// Erdős–Rényi graph: each pair present with probability `num / den`, drawn
/// from a seeded xorshift64* stream.
pub fn random_graph(n: usize, num: u64, den: u64, seed: u64) -> Graph {
    let mut rng = XorShift64Star::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // OEIS A000088
        let expected = [1, 1, 2, 4, 11, 34, 156];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(nonisomorphic_graphs(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn random_graph_extremes() {
        assert_eq!(random_graph(6, 0, 1, 1).m(), 0);
        assert_eq!(random_graph(6, 1, 1, 1).m(), 15);
        assert_eq!(random_graph(9, 1, 2, 77), random_graph(9, 1, 2, 77));
    }
}
