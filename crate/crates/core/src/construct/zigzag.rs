use super::ConstructError;
use crate::embedding::{LinearEmbedding, SpineOrder};
use crate::graph::{gen_complete, Edge};

/// Zigzag Hamiltonian path `i, i+1, i-1, i+2, i-2, ...` on `Z_n`.
fn zigzag(n: usize, start: usize) -> Vec<usize> {
    let mut path = vec![start];
    for step in 1..n {
        let half = step.div_ceil(2);
        let next = if step % 2 == 1 { start + half } else { start + n - half };
        path.push(next % n);
    }
    path
}

/// Book embedding of `K_n` on `ceil(n/2)` pages. For even `n` the `n/2`
/// zigzag paths starting at `0..n/2` partition the edges and each is
/// crossing-free on the circle. For odd `n`, take the embedding of `K_{n+1}`
/// and delete vertex `n`.
pub fn kn_zigzag(n: usize) -> Result<LinearEmbedding, ConstructError> {
    if n < 2 {
        return Err(ConstructError::InvalidParameters(format!("K_n needs n >= 2, got {n}")));
    }
    let even = n + n % 2;
    let pages: Vec<Vec<Edge>> = (0..even / 2)
        .map(|start| {
            zigzag(even, start).windows(2).filter(|w| w[0] < n && w[1] < n).map(|w| Edge::new(w[0], w[1])).collect()
        })
        .collect();
    Ok(LinearEmbedding::from_pages(gen_complete(n), SpineOrder::identity(n), &pages)?)
}
