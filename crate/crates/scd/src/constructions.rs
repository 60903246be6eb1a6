//! Symmetric chain decompositions of the necklace poset, obtained by
//! selecting subchains of the standard decomposition.
//!
//! Both constructions pick one or more representatives per necklace and
//! keep exactly the chains of the standard decomposition induced by
//! them. The Griggs–Killian–Savage selection (prime dimensions) takes
//! the representative with lexicographically minimal block code; the
//! Jordan selection (all dimensions) takes the representatives with the
//! maximum number of unmatched 1s and trims duplicates afterwards.

use crate::error::{Error, Result};
use crate::matching::{block_code, matching, BlockCode};
use crate::necklace::{necklace_of, Necklace};
use crate::subset::Subset;
use std::collections::HashMap;

/// Which representative selection produced a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    /// Lexicographically minimal block code per necklace (prime `n`).
    Gks,
    /// Maximum number of unmatched 1s per necklace.
    Jordan,
}

/// The chosen necklace representatives, prior to chain extraction.
#[derive(Debug, Clone)]
pub struct RepresentativeSet {
    pub n: u32,
    pub rule: SelectionRule,
    pub members: Vec<Subset>,
}

/// A symmetric chain decomposition of `N_n`, stored as representative
/// chains in `Q_n`: consecutive representatives are cover-related, and
/// the induced necklace chains partition the necklace poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceScd {
    pub n: u32,
    pub chains: Vec<Vec<Subset>>,
}

impl NecklaceScd {
    /// The necklaces visited by chain `i`, bottom-up.
    pub fn necklace_chain(&self, i: usize) -> Vec<Necklace> {
        self.chains[i].iter().map(necklace_of).collect()
    }

    /// Complement every representative; chains are reversed so they stay
    /// increasing. The result is again an SCD of `N_n`.
    pub fn complement(&self) -> NecklaceScd {
        let chains = self
            .chains
            .iter()
            .map(|c| {
                let mut rev: Vec<Subset> = c.iter().map(|x| x.complement()).collect();
                rev.reverse();
                rev
            })
            .collect();
        let mut out = NecklaceScd { n: self.n, chains };
        out.sort_chains();
        out
    }

    /// Deterministic chain order: decreasing size, then lexicographic
    /// canonical form of the bottom necklace.
    pub fn sort_chains(&mut self) {
        self.chains.sort_by_key(|c| {
            (
                usize::MAX - c.len(),
                c[0].canonical_rotation().lex_key(),
                c[0].lex_key(),
            )
        });
    }

    /// The canonical necklace chains, as sorted canonical words, usable
    /// as an identity that ignores the choice of representatives.
    pub fn necklace_chain_words(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self
            .chains
            .iter()
            .map(|c| c.iter().map(|x| x.canonical_rotation().word()).collect())
            .collect();
        out.sort();
        out
    }

    /// Check that consecutive representatives cover each other and that
    /// the induced necklaces partition `N_n`.
    pub fn validate_partition(&self) -> Result<()> {
        let n = self.n;
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for (i, chain) in self.chains.iter().enumerate() {
            if chain.is_empty() {
                return Err(Error::Internal(format!("chain {i} is empty")));
            }
            for w in chain.windows(2) {
                if !w[0].covered_by(&w[1]) {
                    return Err(Error::Internal(format!(
                        "representatives {} and {} are not cover-related",
                        w[0], w[1]
                    )));
                }
            }
            for x in chain {
                let canon = x.canonical_rotation().word();
                if seen.insert(canon, i).is_some() {
                    return Err(Error::Internal(format!("necklace of {x} is covered twice")));
                }
            }
        }
        let mut covered = 0u64;
        for word in 0..1u64 << n {
            let x = Subset::from_word(n, word as u32);
            if x.canonical_rotation().word() == x.word() {
                if !seen.contains_key(&x.word()) {
                    return Err(Error::Internal(format!("necklace of {x} is uncovered")));
                }
                covered += 1;
            }
        }
        debug_assert_eq!(covered as usize, seen.len());
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

fn necklaces(n: u32) -> Vec<Necklace> {
    let mut out = Vec::new();
    for word in 0..1u64 << n {
        let x = Subset::from_word(n, word as u32);
        if x.canonical_rotation().word() == x.word() {
            out.push(necklace_of(&x));
        }
    }
    out
}

/// Representatives with lexicographically minimal block code in their
/// necklace. Requires prime `n`, which makes the minimizer unique.
pub fn gks_representatives(n: u32) -> Result<RepresentativeSet> {
    if !is_prime(n) {
        return Err(Error::CompositeDimension(n));
    }
    let mut members = Vec::new();
    for v in necklaces(n) {
        let mut best: Option<(BlockCode, Subset)> = None;
        let mut tied = false;
        for x in v.members() {
            let code = block_code(&x);
            if !code.is_finite() {
                continue;
            }
            match &best {
                Some((b, _)) if *b < code => {}
                Some((b, _)) if *b == code => tied = true,
                _ => {
                    best = Some((code, x));
                    tied = false;
                }
            }
        }
        if tied {
            return Err(Error::Internal(format!(
                "two rotations of {} share the minimal block code",
                v.canonical
            )));
        }
        // 0^n and 1^n have no rotation with finite block code
        members.push(best.map(|(_, x)| x).unwrap_or(v.canonical));
    }
    Ok(RepresentativeSet {
        n,
        rule: SelectionRule::Gks,
        members,
    })
}

/// Representatives with the maximum number of unmatched 1s in their
/// necklace; a necklace may contribute several.
pub fn jordan_representatives(n: u32) -> Result<RepresentativeSet> {
    if !(1..=32).contains(&n) {
        return Err(Error::Dimension(n));
    }
    let mut members = Vec::new();
    for v in necklaces(n) {
        let scored: Vec<(usize, Subset)> = v
            .members()
            .iter()
            .map(|x| (matching(x).unmatched_ones.len(), *x))
            .collect();
        let best = scored.iter().map(|&(s, _)| s).max().unwrap();
        members.extend(
            scored
                .into_iter()
                .filter(|&(s, _)| s == best)
                .map(|(_, x)| x),
        );
    }
    Ok(RepresentativeSet {
        n,
        rule: SelectionRule::Jordan,
        members,
    })
}

/// Group representatives by the chain of the standard decomposition they
/// lie on, check that each group is a contiguous symmetric subchain, and
/// return the representative chains.
fn induced_chains(reps: &RepresentativeSet) -> Result<Vec<Vec<Subset>>> {
    let mut groups: HashMap<Vec<(u32, u32)>, Vec<Subset>> = HashMap::new();
    for &x in &reps.members {
        groups.entry(matching(&x).key()).or_default().push(x);
    }
    let mut chains: Vec<Vec<Subset>> = Vec::new();
    for (_, mut group) in groups.drain() {
        group.sort_by_key(|x| x.level());
        for w in group.windows(2) {
            if !w[0].covered_by(&w[1]) {
                return Err(Error::Internal(format!(
                    "selected representatives are not contiguous: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let (bottom, top) = (group[0].level(), group[group.len() - 1].level());
        if bottom + top != reps.n {
            return Err(Error::Internal(format!(
                "selected subchain spans asymmetric levels {bottom}..{top}"
            )));
        }
        chains.push(group);
    }
    chains.sort_by_key(|c| (usize::MAX - c.len(), c[0].lex_key()));
    Ok(chains)
}

/// The Griggs–Killian–Savage SCD of `N_n` for prime `n`.
pub fn gks_scd(n: u32) -> Result<NecklaceScd> {
    let reps = gks_representatives(n)?;
    let chains = induced_chains(&reps)?;
    let mut scd = NecklaceScd { n, chains };
    scd.sort_chains();
    scd.validate_partition()?;
    Ok(scd)
}

/// The Jordan SCD of `N_n` for arbitrary `n`.
///
/// Starts from all maximal-unmatched-1s representatives and repeatedly
/// trims duplicate pairs: when two chains end in representatives of the
/// same necklace, the shorter chain loses its first and last element
/// (on equal sizes, the chain whose bottom representative is
/// lexicographically larger is trimmed). Duplicate pairs are processed
/// bottom-up by level, then lexicographically.
pub fn jordan_scd(n: u32) -> Result<NecklaceScd> {
    let reps = jordan_representatives(n)?;
    let mut chains = induced_chains(&reps)?;

    loop {
        // map necklace -> chains currently holding a representative of it
        let mut holders: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, chain) in chains.iter().enumerate() {
            for x in chain {
                holders
                    .entry(x.canonical_rotation().word())
                    .or_default()
                    .push(i);
            }
        }
        let mut duplicated: Vec<(u32, u32, u32, Vec<usize>)> = holders
            .into_iter()
            .filter(|(_, cs)| cs.len() >= 2)
            .map(|(w, cs)| {
                let v = Subset::from_word(n, w);
                (v.level(), v.lex_key(), w, cs)
            })
            .collect();
        if duplicated.is_empty() {
            break;
        }
        duplicated.sort();
        let (_, _, word, holders) = duplicated.into_iter().next().unwrap();
        // the duplicate sits at the ends of the trimmable (shorter) chain
        // and may be interior in the longer one
        let mut end_holders: Vec<usize> = holders
            .iter()
            .copied()
            .filter(|&i| {
                let chain = &chains[i];
                let pos = chain
                    .iter()
                    .position(|x| x.canonical_rotation().word() == word)
                    .expect("holder chain contains the duplicated necklace");
                pos == 0 || pos == chain.len() - 1
            })
            .collect();
        if end_holders.is_empty() {
            return Err(Error::Internal(
                "duplicated necklace is interior in every holder chain".into(),
            ));
        }
        // shortest end-holder; on equal sizes the chain whose bottom
        // representative is lexicographically larger is trimmed
        end_holders.sort_by_key(|&i| (chains[i].len(), u32::MAX - chains[i][0].lex_key()));
        let victim = end_holders[0];
        let chain = &mut chains[victim];
        chain.pop();
        if !chain.is_empty() {
            chain.remove(0);
        }
        if chain.is_empty() {
            chains.remove(victim);
        }
    }

    let mut scd = NecklaceScd { n, chains };
    scd.sort_chains();
    scd.validate_partition()?;
    Ok(scd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(bits: &str) -> Subset {
        bits.parse().unwrap()
    }

    #[test]
    fn gks_rejects_composite_dimensions() {
        assert!(matches!(gks_scd(6), Err(Error::CompositeDimension(6))));
        assert!(matches!(gks_scd(1), Err(Error::CompositeDimension(1))));
    }

    #[test]
    fn gks_representative_prefers_smaller_block_code() {
        let reps = gks_representatives(5).unwrap();
        assert!(reps.members.contains(&s("10100")));
        assert!(!reps.members.contains(&s("10010")));
    }

    #[test]
    fn gks_n7_has_five_chains_with_full_spine() {
        let scd = gks_scd(7).unwrap();
        assert_eq!(scd.chains.len(), 5);
        let longest = &scd.chains[0];
        assert_eq!(longest.len(), 8);
        assert_eq!(longest[0], Subset::empty(7));
        assert_eq!(longest[7], Subset::full(7));
    }

    #[test]
    fn gks_n2_is_the_single_spine_chain() {
        let scd = gks_scd(2).unwrap();
        assert_eq!(scd.chains.len(), 1);
        assert_eq!(scd.chains[0], vec![s("00"), s("10"), s("11")]);
    }

    #[test]
    fn jordan_representative_maximizes_unmatched_ones() {
        let reps = jordan_representatives(3).unwrap();
        assert!(reps.members.contains(&s("110")));
        assert!(!reps.members.contains(&s("011")));
        assert!(!reps.members.contains(&s("101")));
    }

    #[test]
    fn jordan_n10_has_26_chains() {
        let scd = jordan_scd(10).unwrap();
        assert_eq!(scd.chains.len(), 26);
    }

    #[test]
    fn jordan_and_gks_differ_at_n7() {
        let j = jordan_scd(7).unwrap();
        let g = gks_scd(7).unwrap();
        assert_eq!(j.chains.len(), g.chains.len());
        assert_ne!(j.necklace_chain_words(), g.necklace_chain_words());
    }

    #[test]
    fn both_constructions_match_the_chain_profile_for_primes() {
        for n in [2u32, 3, 5, 7, 11, 13] {
            let (c_n, sizes) = crate::necklace::necklace_chain_profile(n).unwrap();
            for scd in [gks_scd(n).unwrap(), jordan_scd(n).unwrap()] {
                assert_eq!(scd.chains.len() as u64, c_n, "n={n}");
                let mut got: Vec<u32> = scd.chains.iter().map(|c| c.len() as u32).collect();
                got.sort_unstable_by(|x, y| y.cmp(x));
                assert_eq!(got, sizes, "n={n}");
            }
        }
    }

    #[test]
    fn jordan_holds_the_profile_for_composites() {
        for n in [1u32, 4, 6, 8, 9, 10, 12] {
            let scd = jordan_scd(n).unwrap();
            let (c_n, sizes) = crate::necklace::necklace_chain_profile(n).unwrap();
            assert_eq!(scd.chains.len() as u64, c_n, "n={n}");
            let mut got: Vec<u32> = scd.chains.iter().map(|c| c.len() as u32).collect();
            got.sort_unstable_by(|x, y| y.cmp(x));
            assert_eq!(got, sizes, "n={n}");
        }
    }

    #[test]
    fn jordan_chains_are_subchains_of_the_standard_decomposition() {
        for n in 1..=10u32 {
            let scd = jordan_scd(n).unwrap();
            for chain in &scd.chains {
                let key = crate::matching::matching(&chain[0]).key();
                for x in chain {
                    assert_eq!(crate::matching::matching(x).key(), key);
                }
            }
        }
    }

    #[test]
    fn jordan_deficient_endpoint_law() {
        // a chain holding a deficient necklace has deficient necklaces of
        // the same orbit size at both ends, and full necklaces inside
        for n in 1..=10u32 {
            let scd = jordan_scd(n).unwrap();
            for i in 0..scd.chains.len() {
                let necklaces = scd.necklace_chain(i);
                if necklaces.iter().any(|v| !v.is_full()) {
                    let first = necklaces.first().unwrap();
                    let last = necklaces.last().unwrap();
                    assert_eq!(first.orbit_size, last.orbit_size);
                    if necklaces.len() > 2 {
                        for v in &necklaces[1..necklaces.len() - 1] {
                            assert!(v.is_full(), "n={n}: interior necklace {:?} deficient", v);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complement_of_a_necklace_scd_is_an_scd() {
        for n in [5u32, 6, 7, 10] {
            let scd = jordan_scd(n).unwrap();
            let comp = scd.complement();
            comp.validate_partition().unwrap();
        }
    }
}
