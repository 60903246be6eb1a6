//! Property checkers for chain decompositions: SCD validity,
//! orthogonality, edge-disjointness, unimodality, goodness, and the
//! transformation from almost-orthogonal to orthogonal families.

use crate::chain::{Chain, ChainDecomposition};
use crate::constructions::NecklaceScd;
use crate::counting::count_table;
use crate::error::{Error, Result};
use crate::necklace::necklace_of;
use crate::subset::Subset;
use std::collections::HashMap;
use std::fmt;

/// Hard cap on reported witnesses; full enumeration is available through
/// the `*_with_cap` variants.
pub const DEFAULT_WITNESS_CAP: usize = 32;

/// A violating element, edge, or chain tuple. Every variant carries
/// enough data to re-check the violation independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    UncoveredElement(Subset),
    DuplicatedElement(Subset),
    NotSaturated {
        chain: usize,
        lower: Subset,
        upper: Subset,
    },
    NotSymmetric {
        chain: usize,
        bottom: Subset,
        top: Subset,
    },
    WrongChainCount {
        expected: u64,
        got: usize,
    },
    SharedElements {
        chain_a: usize,
        chain_b: usize,
        elements: Vec<Subset>,
    },
    SharedEdge {
        scd_a: usize,
        scd_b: usize,
        lower: Subset,
        upper: Subset,
    },
    NonUnimodal {
        chain: usize,
        detail: String,
    },
    BadComponent {
        vertices: usize,
        edges: usize,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::UncoveredElement(x) => write!(f, "uncovered element {x}"),
            Witness::DuplicatedElement(x) => write!(f, "element {x} covered twice"),
            Witness::NotSaturated {
                chain,
                lower,
                upper,
            } => {
                write!(f, "chain {chain}: {lower} -> {upper} is not a cover step")
            }
            Witness::NotSymmetric { chain, bottom, top } => {
                write!(f, "chain {chain}: spans {bottom} .. {top} asymmetrically")
            }
            Witness::WrongChainCount { expected, got } => {
                write!(f, "expected {expected} chains, got {got}")
            }
            Witness::SharedElements {
                chain_a,
                chain_b,
                elements,
            } => {
                let list: Vec<String> = elements.iter().map(|x| x.to_string()).collect();
                write!(
                    f,
                    "chains {chain_a} and {chain_b} share {}",
                    list.join(", ")
                )
            }
            Witness::SharedEdge {
                scd_a,
                scd_b,
                lower,
                upper,
            } => {
                write!(
                    f,
                    "decompositions {scd_a} and {scd_b} share edge {lower} -> {upper}"
                )
            }
            Witness::NonUnimodal { chain, detail } => {
                write!(f, "chain {chain} is not unimodal: {detail}")
            }
            Witness::BadComponent { vertices, edges } => {
                write!(
                    f,
                    "component with {vertices} vertices and {edges} edges has two cycles"
                )
            }
        }
    }
}

/// Outcome of a checker run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub property: &'static str,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
}

impl VerificationReport {
    fn collect(property: &'static str, mut witnesses: Vec<Witness>, cap: Option<usize>) -> Self {
        let mut truncated = false;
        if let Some(cap) = cap {
            if witnesses.len() > cap {
                witnesses.truncate(cap);
                truncated = true;
            }
        }
        VerificationReport {
            property,
            pass: witnesses.is_empty(),
            witnesses,
            truncated,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "PASS {}", self.property)
        } else {
            write!(f, "FAIL {} witness={}", self.property, self.witnesses[0])?;
            if self.witnesses.len() > 1 {
                write!(
                    f,
                    " (+{}{} more)",
                    self.witnesses.len() - 1,
                    if self.truncated { "+" } else { "" }
                )?;
            }
            Ok(())
        }
    }
}

/// Does the decomposition partition `Q_n` into `a_n` symmetric saturated
/// chains?
pub fn check_scd(d: &ChainDecomposition) -> VerificationReport {
    check_scd_with_cap(d, Some(DEFAULT_WITNESS_CAP))
}

pub fn check_scd_with_cap(d: &ChainDecomposition, cap: Option<usize>) -> VerificationReport {
    let mut witnesses = Vec::new();
    let n = d.n;
    let width = count_table(n).map(|t| t.width).unwrap_or(0);
    if d.chains.len() as u64 != width {
        witnesses.push(Witness::WrongChainCount {
            expected: width,
            got: d.chains.len(),
        });
    }
    for (ci, chain) in d.chains.iter().enumerate() {
        if chain.is_empty() {
            witnesses.push(Witness::WrongChainCount {
                expected: width,
                got: d.chains.len(),
            });
            continue;
        }
        for w in chain.elements.windows(2) {
            if !w[0].covered_by(&w[1]) {
                witnesses.push(Witness::NotSaturated {
                    chain: ci,
                    lower: w[0],
                    upper: w[1],
                });
            }
        }
        if !chain.is_symmetric() {
            witnesses.push(Witness::NotSymmetric {
                chain: ci,
                bottom: *chain.bottom(),
                top: *chain.top(),
            });
        }
    }
    let mut coverage = vec![0u8; 1usize << n];
    for chain in &d.chains {
        for x in &chain.elements {
            coverage[x.word() as usize] = coverage[x.word() as usize].saturating_add(1);
        }
    }
    for (word, &count) in coverage.iter().enumerate() {
        let x = Subset::from_word(n, word as u32);
        if count == 0 {
            witnesses.push(Witness::UncoveredElement(x));
        } else if count > 1 {
            witnesses.push(Witness::DuplicatedElement(x));
        }
    }
    VerificationReport::collect("scd", witnesses, cap)
}

fn shared_elements_by_pair(
    a: &ChainDecomposition,
    b: &ChainDecomposition,
) -> HashMap<(u32, u32), Vec<Subset>> {
    let mut index_b: HashMap<u32, u32> = HashMap::new();
    for (ci, chain) in b.chains.iter().enumerate() {
        for x in &chain.elements {
            index_b.insert(x.word(), ci as u32);
        }
    }
    let mut shared: HashMap<(u32, u32), Vec<Subset>> = HashMap::new();
    for (ci, chain) in a.chains.iter().enumerate() {
        for x in &chain.elements {
            if let Some(&cj) = index_b.get(&x.word()) {
                shared.entry((ci as u32, cj)).or_default().push(*x);
            }
        }
    }
    shared
}

/// Do any two chains of the two decompositions share at most a single
/// element?
pub fn check_orthogonal(a: &ChainDecomposition, b: &ChainDecomposition) -> VerificationReport {
    check_orthogonal_with_cap(a, b, Some(DEFAULT_WITNESS_CAP))
}

pub fn check_orthogonal_with_cap(
    a: &ChainDecomposition,
    b: &ChainDecomposition,
    cap: Option<usize>,
) -> VerificationReport {
    let mut witnesses = Vec::new();
    let mut shared: Vec<((u32, u32), Vec<Subset>)> =
        shared_elements_by_pair(a, b).into_iter().collect();
    shared.sort_by_key(|&((i, j), _)| (i, j));
    for ((ci, cj), mut elements) in shared {
        if elements.len() > 1 {
            elements.sort_by_key(|x| x.level());
            witnesses.push(Witness::SharedElements {
                chain_a: ci as usize,
                chain_b: cj as usize,
                elements,
            });
        }
    }
    VerificationReport::collect("orthogonal", witnesses, cap)
}

/// Orthogonality with the symmetric-chain exception: the two unique
/// longest chains (size `n + 1`) must intersect in exactly the empty and
/// the full set. Both inputs are assumed to pass [`check_scd`].
pub fn check_almost_orthogonal(
    a: &ChainDecomposition,
    b: &ChainDecomposition,
) -> VerificationReport {
    check_almost_orthogonal_with_cap(a, b, Some(DEFAULT_WITNESS_CAP))
}

pub fn check_almost_orthogonal_with_cap(
    a: &ChainDecomposition,
    b: &ChainDecomposition,
    cap: Option<usize>,
) -> VerificationReport {
    let n = a.n;
    let full = Subset::full(n);
    let empty = Subset::empty(n);
    let mut witnesses = Vec::new();
    let mut shared: Vec<((u32, u32), Vec<Subset>)> =
        shared_elements_by_pair(a, b).into_iter().collect();
    shared.sort_by_key(|&((i, j), _)| (i, j));
    for ((ci, cj), mut elements) in shared {
        if elements.len() <= 1 {
            continue;
        }
        let both_longest = a.chains[ci as usize].len() as u32 == n + 1
            && b.chains[cj as usize].len() as u32 == n + 1;
        let exactly_extremes =
            elements.len() == 2 && elements.contains(&empty) && elements.contains(&full);
        if both_longest && exactly_extremes {
            continue;
        }
        elements.sort_by_key(|x| x.level());
        witnesses.push(Witness::SharedElements {
            chain_a: ci as usize,
            chain_b: cj as usize,
            elements,
        });
    }
    VerificationReport::collect("almost-orthogonal", witnesses, cap)
}

/// Does no cover edge appear in chains of two different decompositions?
pub fn check_edge_disjoint(family: &[ChainDecomposition]) -> VerificationReport {
    check_edge_disjoint_with_cap(family, Some(DEFAULT_WITNESS_CAP))
}

pub fn check_edge_disjoint_with_cap(
    family: &[ChainDecomposition],
    cap: Option<usize>,
) -> VerificationReport {
    let mut witnesses = Vec::new();
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (si, d) in family.iter().enumerate() {
        for chain in &d.chains {
            for (lo, hi) in chain.edges() {
                let key = lo.word() as u64 | (hi.word() as u64) << 32;
                match owner.get(&key) {
                    Some(&prev) if prev != si => witnesses.push(Witness::SharedEdge {
                        scd_a: prev,
                        scd_b: si,
                        lower: lo,
                        upper: hi,
                    }),
                    Some(_) => {}
                    None => {
                        owner.insert(key, si);
                    }
                }
            }
        }
    }
    VerificationReport::collect("edge-disjoint", witnesses, cap)
}

/// Are all chains of a necklace SCD unimodal (deficient endpoints of
/// equal orbit size, all interior necklaces full)?
pub fn check_unimodal(scd: &NecklaceScd) -> VerificationReport {
    let mut witnesses = Vec::new();
    for (ci, chain) in scd.chains.iter().enumerate() {
        let necklaces: Vec<_> = chain.iter().map(necklace_of).collect();
        if necklaces.is_empty() {
            witnesses.push(Witness::NonUnimodal {
                chain: ci,
                detail: "empty chain".into(),
            });
            continue;
        }
        let first = necklaces.first().unwrap();
        let last = necklaces.last().unwrap();
        if first.orbit_size != last.orbit_size {
            witnesses.push(Witness::NonUnimodal {
                chain: ci,
                detail: format!(
                    "endpoints have orbit sizes {} and {}",
                    first.orbit_size, last.orbit_size
                ),
            });
        }
        if necklaces.len() > 2 {
            for v in &necklaces[1..necklaces.len() - 1] {
                if !v.is_full() {
                    witnesses.push(Witness::NonUnimodal {
                        chain: ci,
                        detail: format!("interior necklace {} is deficient", v.canonical),
                    });
                }
            }
        }
    }
    VerificationReport::collect("unimodal", witnesses, Some(DEFAULT_WITNESS_CAP))
}

/// Shape of one connected component of the union of size-2 chains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComponentShape {
    pub vertices: usize,
    pub edges: usize,
    /// Length of the unique cycle, if the component contains one.
    pub cycle_length: Option<usize>,
    /// Tree whose maximum degree is 2.
    pub is_path: bool,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.cycle_length, self.is_path) {
            (Some(len), _) if self.edges == len => write!(f, "cycle of length {len}"),
            (Some(len), _) => write!(
                f,
                "unicyclic: cycle of length {len} with {} tree edges",
                self.edges - len
            ),
            (None, true) => write!(f, "path on {} edges", self.edges),
            (None, false) => write!(f, "tree on {} edges", self.edges),
        }
    }
}

/// Goodness verdict plus the component census of the size-2-chain graph.
#[derive(Debug, Clone)]
pub struct GoodnessOutcome {
    pub report: VerificationReport,
    pub components: Vec<ComponentShape>,
}

/// For odd `n`: collect the edges of all size-2 chains across the family
/// and check that every connected component contains at most one cycle.
pub fn check_good(family: &[ChainDecomposition]) -> Result<GoodnessOutcome> {
    let n = family
        .first()
        .ok_or_else(|| Error::Precondition("empty family".into()))?
        .n;
    if n % 2 == 0 {
        return Err(Error::Precondition(format!(
            "goodness is defined for odd dimensions, got n={n}"
        )));
    }
    let mut adjacency: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut edge_count = 0usize;
    for d in family {
        for chain in &d.chains {
            if chain.len() == 2 {
                let (a, b) = (chain.elements[0].word(), chain.elements[1].word());
                adjacency.entry(a).or_default().push(b);
                adjacency.entry(b).or_default().push(a);
                edge_count += 1;
            }
        }
    }
    let _ = edge_count;

    let mut order: Vec<u32> = adjacency.keys().copied().collect();
    order.sort_unstable();
    let mut component_of: HashMap<u32, usize> = HashMap::new();
    let mut components = Vec::new();
    let mut witnesses = Vec::new();
    for &start in &order {
        if component_of.contains_key(&start) {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut nodes = Vec::new();
        component_of.insert(start, id);
        while let Some(v) = stack.pop() {
            nodes.push(v);
            for &w in &adjacency[&v] {
                if let std::collections::hash_map::Entry::Vacant(e) = component_of.entry(w) {
                    e.insert(id);
                    stack.push(w);
                }
            }
        }
        let vertices = nodes.len();
        let edges: usize = nodes.iter().map(|v| adjacency[v].len()).sum::<usize>() / 2;
        // peel leaves to expose the cycle, if any
        let mut degree: HashMap<u32, usize> =
            nodes.iter().map(|&v| (v, adjacency[&v].len())).collect();
        let mut queue: Vec<u32> = nodes.iter().copied().filter(|v| degree[v] == 1).collect();
        let mut remaining = vertices;
        while let Some(v) = queue.pop() {
            if degree[&v] != 1 {
                continue;
            }
            degree.insert(v, 0);
            remaining -= 1;
            for &w in &adjacency[&v] {
                let dw = degree[&w];
                if dw > 0 {
                    degree.insert(w, dw - 1);
                    if dw - 1 == 1 {
                        queue.push(w);
                    }
                }
            }
        }
        let cycle_length = if edges >= vertices {
            Some(remaining)
        } else {
            None
        };
        let is_path = edges + 1 == vertices && nodes.iter().all(|v| adjacency[v].len() <= 2);
        if edges > vertices {
            witnesses.push(Witness::BadComponent { vertices, edges });
        }
        components.push(ComponentShape {
            vertices,
            edges,
            cycle_length,
            is_path,
        });
    }
    components.sort();
    Ok(GoodnessOutcome {
        report: VerificationReport::collect("good", witnesses, Some(DEFAULT_WITNESS_CAP)),
        components,
    })
}

/// Turn a family of pairwise almost-orthogonal SCDs into pairwise
/// orthogonal chain decompositions by moving the empty set, in all but
/// the first decomposition, from the longest chain to a shortest chain.
///
/// The target is the first shortest chain disjoint from the first
/// decomposition's longest chain and from targets already used; the
/// resulting chains are no longer all symmetric.
pub fn to_orthogonal(family: &[ChainDecomposition]) -> Result<Vec<ChainDecomposition>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let n = first.n;
    if n < 5 {
        return Err(Error::Precondition(format!(
            "the empty-set move requires n >= 5, got n={n}"
        )));
    }
    if family.len() <= 1 {
        return Ok(family.to_vec());
    }
    let longest_of_first: &Chain = family[0]
        .chains
        .iter()
        .find(|c| c.len() as u32 == n + 1)
        .ok_or_else(|| Error::Precondition("first decomposition has no longest chain".into()))?;
    let forbidden_base: Vec<u32> = longest_of_first.elements.iter().map(|x| x.word()).collect();

    let mut out = vec![family[0].clone()];
    let mut used_target_nodes: Vec<u32> = Vec::new();
    for d in &family[1..] {
        if d.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: d.n,
            });
        }
        let mut d = d.clone();
        let longest_idx = d
            .chains
            .iter()
            .position(|c| c.len() as u32 == n + 1)
            .ok_or_else(|| Error::Precondition("decomposition has no longest chain".into()))?;
        let min_size = d
            .chains
            .iter()
            .filter(|c| c.len() as u32 != n + 1)
            .map(|c| c.len())
            .min()
            .ok_or_else(|| Error::Precondition("decomposition has a single chain".into()))?;
        let mut candidates: Vec<usize> = (0..d.chains.len())
            .filter(|&i| d.chains[i].len() == min_size)
            .collect();
        candidates.sort_by_key(|&i| d.chains[i].bottom().lex_key());
        let target = candidates
            .into_iter()
            .find(|&i| {
                d.chains[i].elements.iter().all(|x| {
                    !forbidden_base.contains(&x.word()) && !used_target_nodes.contains(&x.word())
                })
            })
            .ok_or_else(|| {
                Error::Precondition("no shortest chain avoids the used targets".into())
            })?;
        used_target_nodes.extend(d.chains[target].elements.iter().map(|x| x.word()));
        let empty = Subset::empty(n);
        d.chains[longest_idx].elements.retain(|x| *x != empty);
        d.chains[target].elements.insert(0, empty);
        out.push(d);
    }
    Ok(out)
}
