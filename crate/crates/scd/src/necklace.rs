//! The necklace poset `N_n`: the quotient of the n-cube by cyclic
//! rotation, with edge capacities, and its reduced multigraph.

use crate::counting::binomial;
use crate::error::{Error, Result};
use crate::subset::Subset;
use std::collections::HashMap;

/// A rotation orbit, identified by its lexicographically smallest
/// representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Necklace {
    pub canonical: Subset,
    pub orbit_size: u32,
}

impl Necklace {
    pub fn level(&self) -> u32 {
        self.canonical.level()
    }

    /// Full necklaces have orbit size exactly `n`.
    pub fn is_full(&self) -> bool {
        self.orbit_size == self.canonical.n()
    }

    /// All distinct rotations, starting from the canonical one.
    pub fn members(&self) -> Vec<Subset> {
        (0..self.orbit_size as i64)
            .map(|k| self.canonical.rotate(k))
            .collect()
    }

    /// The necklace of the complemented representative.
    pub fn complement(&self) -> Necklace {
        necklace_of(&self.canonical.complement())
    }
}

/// The necklace containing `x`.
pub fn necklace_of(x: &Subset) -> Necklace {
    Necklace {
        canonical: x.canonical_rotation(),
        orbit_size: x.orbit_size(),
    }
}

/// An edge of the necklace poset with its capacity: the number of
/// distinct elements that can be added to a fixed representative of the
/// endpoint farther from the middle to reach the other endpoint (removal
/// direction above the middle).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetEdge {
    pub lower: usize,
    pub upper: usize,
    pub capacity: u32,
}

/// The necklace poset as a leveled multigraph. Nodes are sorted by
/// (level, lexicographic canonical form), which fixes all downstream
/// orderings.
#[derive(Debug, Clone)]
pub struct NecklacePoset {
    pub n: u32,
    pub nodes: Vec<Necklace>,
    pub levels: Vec<Vec<usize>>,
    pub edges: Vec<PosetEdge>,
    pub up_edges: Vec<Vec<usize>>,
    pub down_edges: Vec<Vec<usize>>,
    index: HashMap<u32, usize>,
}

impl NecklacePoset {
    pub fn node_of(&self, x: &Subset) -> usize {
        self.index[&x.canonical_rotation().word()]
    }

    pub fn level_sizes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }

    /// Remove every edge between a full necklace and a deficient necklace
    /// for which the deficient endpoint is strictly closer to the middle
    /// level(s). Distances are measured to `n/2` over the rationals, so
    /// for odd `n` both middle levels are at distance 1/2.
    pub fn reduce(&self) -> ReducedNecklaceGraph {
        let n = self.n;
        let retained: Vec<bool> = self
            .edges
            .iter()
            .map(|e| {
                let lo = &self.nodes[e.lower];
                let hi = &self.nodes[e.upper];
                if lo.is_full() == hi.is_full() {
                    return true;
                }
                // twice the |level - n/2| distance, to stay integral
                let dist2 = |level: u32| (2 * level as i64 - n as i64).abs();
                let (deficient_level, full_level) = if lo.is_full() {
                    (hi.level(), lo.level())
                } else {
                    (lo.level(), hi.level())
                };
                dist2(deficient_level) >= dist2(full_level)
            })
            .collect();
        let mut up_edges = vec![Vec::new(); self.nodes.len()];
        let mut down_edges = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if retained[i] {
                up_edges[e.lower].push(i);
                down_edges[e.upper].push(i);
            }
        }
        ReducedNecklaceGraph {
            poset: self.clone(),
            retained,
            up_edges,
            down_edges,
        }
    }
}

/// `N_n^-`: the necklace poset minus the middle-pointing edges between
/// full and deficient necklaces. Node set and capacities are unchanged.
#[derive(Debug, Clone)]
pub struct ReducedNecklaceGraph {
    pub poset: NecklacePoset,
    pub retained: Vec<bool>,
    pub up_edges: Vec<Vec<usize>>,
    pub down_edges: Vec<Vec<usize>>,
}

impl ReducedNecklaceGraph {
    pub fn n(&self) -> u32 {
        self.poset.n
    }

    pub fn edge(&self, i: usize) -> &PosetEdge {
        &self.poset.edges[i]
    }

    pub fn retained_edges(&self) -> impl Iterator<Item = (usize, &PosetEdge)> {
        self.poset
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| self.retained[*i])
    }

    /// Retained edge from `lower` to `upper`, if any.
    pub fn edge_between(&self, lower: usize, upper: usize) -> Option<usize> {
        self.up_edges[lower]
            .iter()
            .copied()
            .find(|&i| self.poset.edges[i].upper == upper)
    }
}

/// Build the necklace poset of `Q_n` by full enumeration. Cost grows
/// with `2^n`; dimensions up to about 16 stay interactive.
pub fn build_poset(n: u32) -> Result<NecklacePoset> {
    if !(1..=32).contains(&n) {
        return Err(Error::Dimension(n));
    }
    let mut nodes = Vec::new();
    for word in 0..1u64 << n {
        let x = Subset::from_word(n, word as u32);
        let canon = x.canonical_rotation();
        if canon.word() == x.word() {
            nodes.push(necklace_of(&x));
        }
    }
    nodes.sort_by_key(|v| (v.level(), v.canonical.lex_key()));
    let index: HashMap<u32, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, v)| (v.canonical.word(), i))
        .collect();
    let mut levels = vec![Vec::new(); n as usize + 1];
    for (i, v) in nodes.iter().enumerate() {
        levels[v.level() as usize].push(i);
    }

    let mut edges: Vec<PosetEdge> = Vec::new();
    for level in 0..n {
        // capacities are counted from the endpoint farther from the middle
        let from_below = 2 * level < n;
        let mut counts: HashMap<(usize, usize), u32> = HashMap::new();
        if from_below {
            for &lo in &levels[level as usize] {
                let rep = nodes[lo].canonical;
                for m in 1..=n {
                    if !rep.contains(m) {
                        let hi = index[&rep.with(m).canonical_rotation().word()];
                        *counts.entry((lo, hi)).or_insert(0) += 1;
                    }
                }
            }
        } else {
            for &hi in &levels[level as usize + 1] {
                let rep = nodes[hi].canonical;
                for m in 1..=n {
                    if rep.contains(m) {
                        let lo = index[&rep.without(m).canonical_rotation().word()];
                        *counts.entry((lo, hi)).or_insert(0) += 1;
                    }
                }
            }
        }
        let mut level_edges: Vec<PosetEdge> = counts
            .into_iter()
            .map(|((lower, upper), capacity)| PosetEdge {
                lower,
                upper,
                capacity,
            })
            .collect();
        level_edges.sort_by_key(|e| (e.lower, e.upper));
        edges.extend(level_edges);
    }

    let mut up_edges = vec![Vec::new(); nodes.len()];
    let mut down_edges = vec![Vec::new(); nodes.len()];
    for (i, e) in edges.iter().enumerate() {
        up_edges[e.lower].push(i);
        down_edges[e.upper].push(i);
    }
    Ok(NecklacePoset {
        n,
        nodes,
        levels,
        edges,
        up_edges,
        down_edges,
        index,
    })
}

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Number of binary necklaces of length `n` with exactly `k` ones,
/// by orbit counting over the rotation group. Usable beyond the
/// enumeration range of [`build_poset`].
pub fn necklace_count(n: u32, k: u32) -> u64 {
    let g = gcd(n as u64, k as u64);
    let mut total = 0u64;
    for d in 1..=g {
        if g.is_multiple_of(d) {
            total += euler_phi(d) * binomial(n / d as u32, k / d as u32);
        }
    }
    total / n as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Level sizes of `N_n` (and of `N_n^-`, which has the same nodes).
pub fn necklace_level_sizes(n: u32) -> Result<Vec<u64>> {
    if n < 1 {
        return Err(Error::Dimension(n));
    }
    Ok((0..=n).map(|k| necklace_count(n, k)).collect())
}

/// Number of chains `c_n` of any symmetric chain decomposition of `N_n`
/// together with the per-chain sizes in decreasing order (chain 1 is the
/// unique longest chain).
pub fn necklace_chain_profile(n: u32) -> Result<(u64, Vec<u32>)> {
    let level_sizes = necklace_level_sizes(n)?;
    let mut sizes = Vec::new();
    for k in 0..=n / 2 {
        let new_chains = level_sizes[k as usize]
            .checked_sub(if k == 0 {
                0
            } else {
                level_sizes[k as usize - 1]
            })
            .ok_or_else(|| {
                Error::Internal(format!("necklace level sizes of N_{n} are not unimodal"))
            })?;
        for _ in 0..new_chains {
            sizes.push(n + 1 - 2 * k);
        }
    }
    let c_n = level_sizes[(n / 2) as usize];
    debug_assert_eq!(sizes.len() as u64, c_n);
    Ok((c_n, sizes))
}
