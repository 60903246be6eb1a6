//! Width and orthogonality-bound counting.

use crate::error::{Error, Result};
use crate::subset::MAX_DIMENSION;

/// Width `a_n = C(n, floor(n/2))` and the upper bound
/// `b_n = floor(n/2) + 1` on pairwise orthogonal (or edge-disjoint)
/// symmetric chain decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountTable {
    pub n: u32,
    pub width: u64,
    pub bound: u32,
}

/// Binomial coefficient `C(n, k)` for `n <= 64`.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as u64
}

/// Exact `a_n` and `b_n`.
pub fn count_table(n: u32) -> Result<CountTable> {
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(Error::Dimension(n));
    }
    Ok(CountTable {
        n,
        width: binomial(n, n / 2),
        bound: n / 2 + 1,
    })
}

/// Sizes and multiplicities of the chains in any symmetric chain
/// decomposition of the n-cube: the chains spanning levels `k..=n-k`
/// number `C(n,k) - C(n,k-1)` and have size `n + 1 - 2k`.
///
/// Returned in decreasing size order; the counts sum to `a_n`.
pub fn chain_size_profile(n: u32) -> Result<Vec<(u32, u64)>> {
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(Error::Dimension(n));
    }
    let mut profile = Vec::new();
    for k in 0..=n / 2 {
        let count = binomial(n, k) - if k == 0 { 0 } else { binomial(n, k - 1) };
        if count > 0 {
            profile.push((n + 1 - 2 * k, count));
        }
    }
    Ok(profile)
}
