//! Permutation helpers shared by enumeration code.

/// Rearranges `p` into the next permutation in lexicographic order. Returns
/// false (leaving `p` sorted ascending) after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `k!`, saturating at `u64::MAX`.
pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).try_fold(1u64, |acc, x| acc.checked_mul(x)).unwrap_or(u64::MAX)
}

/// The `rank`-th permutation (lexicographic, 0-based) of `items`, which must
/// be sorted. Requires `rank < items.len()!`.
pub fn unrank(items: &[usize], mut rank: u64) -> Vec<usize> {
    let mut pool = items.to_vec();
    let mut out = Vec::with_capacity(items.len());
    for remaining in (1..=items.len()).rev() {
        let block = factorial(remaining - 1);
        let idx = (rank / block) as usize;
        rank %= block;
        out.push(pool.remove(idx));
    }
    out
}
