//! The Greene–Kleitman parenthesis matching and the standard symmetric
//! chain decomposition it generates.
//!
//! Read a bitstring with every 0 as an opening parenthesis and every 1 as
//! a closing parenthesis, and match closest pairs. The matched pairs are
//! invariant along a chain: flipping the leftmost unmatched 0 to a 1 (the
//! successor step) walks up, flipping the rightmost unmatched 1 walks
//! down. Grouping all bitstrings that share their matched pairs yields
//! the standard decomposition `D_n`.

use crate::chain::{Chain, ChainDecomposition, Kind};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// The parenthesis structure of a bitstring. All positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    /// Matched pairs `(i, j)` with a 0 at `i`, a 1 at `j > i`, non-crossing.
    pub pairs: Vec<(u32, u32)>,
    /// Unmatched 0 positions, increasing.
    pub unmatched_zeros: Vec<u32>,
    /// Unmatched 1 positions, increasing; all precede every unmatched 0.
    pub unmatched_ones: Vec<u32>,
}

impl Matching {
    /// Sorted copy of the pairs, usable as a chain identity key.
    pub fn key(&self) -> Vec<(u32, u32)> {
        let mut k = self.pairs.clone();
        k.sort_unstable();
        k
    }
}

/// Greedy nearest-pair matching of 0s (opening) against 1s (closing).
pub fn matching(x: &Subset) -> Matching {
    let mut stack: Vec<u32> = Vec::new();
    let mut pairs = Vec::new();
    let mut unmatched_ones = Vec::new();
    for i in 1..=x.n() {
        if x.contains(i) {
            match stack.pop() {
                Some(j) => pairs.push((j, i)),
                None => unmatched_ones.push(i),
            }
        } else {
            stack.push(i);
        }
    }
    Matching {
        pairs,
        unmatched_zeros: stack,
        unmatched_ones,
    }
}

/// Flip the leftmost unmatched 0 to a 1, moving one level up the chain.
pub fn successor(x: &Subset) -> Result<Subset> {
    let m = matching(x);
    match m.unmatched_zeros.first() {
        Some(&i) => Ok(x.with(i)),
        None => Err(Error::NoUnmatchedZero),
    }
}

/// Flip the rightmost unmatched 1 to a 0, moving one level down the chain.
pub fn predecessor(x: &Subset) -> Result<Subset> {
    let m = matching(x);
    match m.unmatched_ones.last() {
        Some(&i) => Ok(x.without(i)),
        None => Err(Error::NoUnmatchedOne),
    }
}

/// The full chain of the standard decomposition containing `x`.
///
/// The matching is computed once; the chain runs from the bitstring with
/// all unmatched positions cleared to the one with all of them set, and
/// successor steps fill the unmatched positions left to right.
pub fn chain_of(x: &Subset) -> Chain {
    let m = matching(x);
    let mut free: Vec<u32> = m
        .unmatched_ones
        .iter()
        .chain(m.unmatched_zeros.iter())
        .copied()
        .collect();
    free.sort_unstable();
    let mut bottom = *x;
    for &i in &m.unmatched_ones {
        bottom = bottom.without(i);
    }
    let mut elements = Vec::with_capacity(free.len() + 1);
    let mut cur = bottom;
    elements.push(cur);
    for &i in &free {
        cur = cur.with(i);
        elements.push(cur);
    }
    Chain::new(x.n(), elements)
}

/// The standard symmetric chain decomposition `D_n` of the n-cube.
pub fn standard_scd(n: u32) -> ChainDecomposition {
    assert!(
        (1..=20).contains(&n),
        "full enumeration only supported up to n=20"
    );
    let mut chains = Vec::new();
    for word in 0..1u64 << n {
        let x = Subset::from_word(n, word as u32);
        let m = matching(&x);
        if m.unmatched_ones.is_empty() {
            // x is the bottom of its chain; emit the chain once
            chains.push(chain_of(&x));
        }
    }
    let mut d = ChainDecomposition::new(n, Kind::Cube, chains);
    d.sort_chains();
    d
}

/// The block code of a bitstring `x = 1^{a_1} 0^{b_1} ... 1^{a_r} 0^{b_r}`:
/// the tuple `(a_1 + b_1, ..., a_r + b_r)`, or the infinite marker when
/// `x` does not start with 1 and end with 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockCode {
    Finite(Vec<u32>),
    Infinite,
}

impl BlockCode {
    pub fn is_finite(&self) -> bool {
        matches!(self, BlockCode::Finite(_))
    }
}

pub fn block_code(x: &Subset) -> BlockCode {
    let n = x.n();
    if !x.contains(1) || x.contains(n) {
        return BlockCode::Infinite;
    }
    let mut parts = Vec::new();
    let mut i = 1;
    while i <= n {
        let start = i;
        while i <= n && x.contains(i) {
            i += 1;
        }
        while i <= n && !x.contains(i) {
            i += 1;
        }
        parts.push(i - start);
    }
    BlockCode::Finite(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(bits: &str) -> Subset {
        bits.parse().unwrap()
    }

    #[test]
    fn matching_of_22_bit_example() {
        let x = s("0000001001001001100001");
        let m = matching(&x);
        assert_eq!(
            m.key(),
            vec![(6, 7), (9, 10), (12, 13), (14, 17), (15, 16), (21, 22)]
        );
        assert_eq!(m.unmatched_zeros, vec![1, 2, 3, 4, 5, 8, 11, 18, 19, 20]);
        assert!(m.unmatched_ones.is_empty());
    }

    #[test]
    fn matching_of_all_zeros() {
        let x = Subset::empty(6);
        let m = matching(&x);
        assert!(m.pairs.is_empty());
        assert_eq!(m.unmatched_zeros, vec![1, 2, 3, 4, 5, 6]);
        assert!(m.unmatched_ones.is_empty());
    }

    #[test]
    fn matching_of_110() {
        let m = matching(&s("110"));
        assert!(m.pairs.is_empty());
        assert_eq!(m.unmatched_ones, vec![1, 2]);
        assert_eq!(m.unmatched_zeros, vec![3]);
    }

    #[test]
    fn matching_length_identity() {
        for word in 0..1u32 << 10 {
            let x = Subset::from_word(10, word);
            let m = matching(&x);
            assert_eq!(
                10,
                2 * m.pairs.len() as u32
                    + m.unmatched_zeros.len() as u32
                    + m.unmatched_ones.len() as u32
            );
            // every unmatched 1 precedes every unmatched 0
            if let (Some(&last_one), Some(&first_zero)) =
                (m.unmatched_ones.last(), m.unmatched_zeros.first())
            {
                assert!(last_one < first_zero);
            }
        }
    }

    #[test]
    fn successor_steps_of_22_bit_example() {
        let x = s("0000001001001001100001");
        assert_eq!(successor(&x).unwrap(), s("1000001001001001100001"));
        let mut y = x;
        for _ in 0..10 {
            y = successor(&y).unwrap();
        }
        assert_eq!(y, s("1111101101101001111101"));
        assert!(successor(&y).is_err());
        assert_eq!(matching(&y).key(), matching(&x).key());
    }

    #[test]
    fn successor_of_all_zeros_flips_first_bit() {
        let x = Subset::empty(5);
        assert_eq!(successor(&x).unwrap(), s("10000"));
    }

    #[test]
    fn predecessor_inverts_successor() {
        for word in 0..1u32 << 9 {
            let x = Subset::from_word(9, word);
            if let Ok(y) = successor(&x) {
                assert_eq!(matching(&y).key(), matching(&x).key());
                assert_eq!(y.level(), x.level() + 1);
                assert_eq!(predecessor(&y).unwrap(), x);
            }
        }
    }

    #[test]
    fn chain_of_prefix_subset_is_the_longest_chain() {
        let x = Subset::from_elements(5, [1, 2]);
        let chain = chain_of(&x);
        let expected: Vec<Subset> = (0..=5).map(|k| Subset::from_elements(5, 1..=k)).collect();
        assert_eq!(chain.elements, expected);
    }

    #[test]
    fn chain_of_fully_matched_string_is_a_singleton() {
        let x = s("01");
        assert_eq!(chain_of(&x).elements, vec![x]);
    }

    #[test]
    fn chain_of_1010_from_the_brute_force_oracle() {
        let chain = chain_of(&s("1010"));
        assert_eq!(chain.elements, vec![s("0010"), s("1010"), s("1011")]);
        assert!(chain.is_symmetric() && chain.is_saturated());
    }

    #[test]
    fn standard_scd_small_counts() {
        assert_eq!(standard_scd(1).chains.len(), 1);
        assert_eq!(standard_scd(4).chains.len(), 6);
        let d7 = standard_scd(7);
        assert_eq!(d7.chains.len(), 35);
        let mut sizes: Vec<usize> = d7.chains.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        let mut expected = vec![8; 1];
        expected.extend(vec![6; 6]);
        expected.extend(vec![4; 14]);
        expected.extend(vec![2; 14]);
        expected.sort_unstable();
        assert_eq!(sizes, expected);
    }

    #[test]
    fn block_code_examples() {
        assert_eq!(block_code(&s("110100")), BlockCode::Finite(vec![3, 3]));
        assert_eq!(block_code(&s("100110")), BlockCode::Finite(vec![3, 3]));
        assert_eq!(block_code(&s("10")), BlockCode::Finite(vec![2]));
        assert_eq!(block_code(&s("011")), BlockCode::Infinite);
        assert_eq!(block_code(&s("10100")), BlockCode::Finite(vec![2, 3]));
        assert_eq!(block_code(&s("10010")), BlockCode::Finite(vec![3, 2]));
    }
}
