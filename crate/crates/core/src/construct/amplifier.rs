use super::ConstructError;
use crate::graph::{Graph, KTree};

/// One amplification round: every k-clique of the k-tree receives
/// `3 k^2 ℓ` new private neighbors adjacent to exactly that clique. Each new
/// vertex attaches to a k-clique, so the result is again a k-tree. A `K_2`
/// with `k = 1` is returned unchanged, as it is the base of the induction.
/// Fails when the result would have more than `cap` vertices.
pub fn lemma2_amplifier(kt: &KTree, ell: usize, cap: usize) -> Result<KTree, ConstructError> {
    let k = kt.k;
    if k == 1 && kt.graph.n() == 2 {
        return Ok(kt.clone());
    }
    let per_clique = 3 * k * k * ell;
    let cliques = kt.k_cliques();
    let n = kt.graph.n();
    let total = cliques.len().checked_mul(per_clique).and_then(|x| x.checked_add(n));
    let Some(total) = total.filter(|&t| t <= cap) else {
        return Err(ConstructError::CapExceeded(format!(
            "{} cliques times {per_clique} new vertices exceed the cap of {cap}",
            cliques.len()
        )));
    };
    let mut pairs: Vec<(usize, usize)> = kt.graph.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut order = kt.order.clone();
    let mut attachments = kt.attachments.clone();
    let mut next = n;
    for c in &cliques {
        for _ in 0..per_clique {
            pairs.extend(c.iter().map(|&x| (x, next)));
            order.push(next);
            attachments.push(c.clone());
            next += 1;
        }
    }
    debug_assert_eq!(next, total);
    let graph = Graph::new(total, pairs)?;
    Ok(KTree { k, graph, order, attachments })
}
