//! Spine orders up to rotation and reflection.
//!
//! Crossings only depend on the cyclic order of the spine up to reversal, so
//! it suffices to put vertex 0 first and keep one of each mirror pair
//! `0, a_1, ..., a_{n-1}` / `0, a_{n-1}, ..., a_1`: the one with
//! `a_1 < a_{n-1}`. That leaves `(n-1)!/2` spines for `n >= 3`.

use crate::embedding::SpineOrder;
use crate::perm::{factorial, next_permutation, unrank};

/// Number of permutations of `1..n` indexed by [`canonical_spine_at`].
pub fn spine_index_space(n: usize) -> u64 {
    factorial(n.saturating_sub(1))
}

pub fn canonical_spine_count(n: usize) -> u64 {
    if n <= 2 {
        1
    } else {
        spine_index_space(n) / 2
    }
}

fn is_canonical(rest: &[usize]) -> bool {
    rest.len() < 2 || rest[0] < rest[rest.len() - 1]
}

/// Spine for the `index`-th permutation of `1..n` in lexicographic order, or
/// `None` when that permutation is the mirror image of a canonical one.
pub fn canonical_spine_at(n: usize, index: u64) -> Option<SpineOrder> {
    if n == 0 {
        return (index == 0).then(|| SpineOrder::identity(0));
    }
    let items: Vec<usize> = (1..n).collect();
    let rest = unrank(&items, index);
    is_canonical(&rest).then(|| {
        let mut order = vec![0];
        order.extend(rest);
        SpineOrder::new(order).expect("permutation")
    })
}

/// All canonical spines in lexicographic order.
pub fn canonical_spines(n: usize) -> impl Iterator<Item = SpineOrder> {
    let mut rest: Vec<usize> = (1..n.max(1)).collect();
    let mut first = true;
    std::iter::from_fn(move || loop {
        if !first && !next_permutation(&mut rest) {
            return None;
        }
        first = false;
        if is_canonical(&rest) {
            let mut order = Vec::with_capacity(n);
            if n > 0 {
                order.push(0);
            }
            order.extend(&rest);
            return Some(SpineOrder::new(order).expect("permutation"));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::crosses;
    use crate::graph::{gen_complete, Edge};
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(canonical_spine_count(7), 360);
        for n in 0..8 {
            assert_eq!(canonical_spines(n).count() as u64, canonical_spine_count(n), "n = {n}");
            let by_index = (0..spine_index_space(n)).filter_map(|i| canonical_spine_at(n, i)).count() as u64;
            assert_eq!(by_index, canonical_spine_count(n));
        }
    }

    #[test]
    fn every_spine_has_a_canonical_crossing_twin() {
        // Each of the 5! spines of K_5's vertices has the same crossing
        // relation as some canonical spine.
        let n = 5;
        let edges: Vec<Edge> = gen_complete(n).edges().to_vec();
        let signature = |s: &SpineOrder| -> Vec<bool> {
            edges.iter().flat_map(|&a| edges.iter().map(move |&b| (a, b))).map(|(a, b)| crosses(a, b, s)).collect()
        };
        let canon: HashSet<Vec<bool>> = canonical_spines(n).map(|s| signature(&s)).collect();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            assert!(canon.contains(&signature(&SpineOrder::new(p.clone()).unwrap())));
            if !next_permutation(&mut p) {
                break;
            }
        }
    }
}
