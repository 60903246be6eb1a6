//! Unrolling: translating chains and SCDs of the necklace poset into
//! chains and SCDs of the n-cube.
//!
//! A chain of full necklaces with representatives `x_1 ⋖ ... ⋖ x_k`
//! unrolls into the `n` disjoint rotated copies of that chain. When both
//! ends are deficient of orbit size `d`, only `d` rotations keep the
//! endpoints and the remaining `n - d` copies are stripped of them. The
//! representative choice is not unique; [`try_unroll_family`] searches
//! the choices of several SCDs simultaneously for an edge-disjoint or
//! almost-orthogonal result.

use crate::chain::{Chain, ChainDecomposition, Kind};
use crate::constructions::NecklaceScd;
use crate::error::{Error, Result};
use crate::necklace::{build_poset, necklace_of, Necklace};
use crate::subset::Subset;
use std::collections::HashMap;
use std::rc::Rc;

/// An unrolling choice for one necklace chain: coherent representatives,
/// bottom-up, plus the orbit size of the deficient endpoints (`n` when
/// every necklace on the chain is full).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeChain {
    pub n: u32,
    pub reps: Vec<Subset>,
    pub deficiency: u32,
}

impl RepresentativeChain {
    /// Wrap a representative walk, checking covers and unimodality.
    pub fn new(n: u32, reps: Vec<Subset>) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::Precondition("empty representative chain".into()));
        }
        for w in reps.windows(2) {
            if !w[0].covered_by(&w[1]) {
                return Err(Error::Precondition(format!(
                    "representatives {} and {} are not cover-related",
                    w[0], w[1]
                )));
            }
        }
        let necklaces: Vec<Necklace> = reps.iter().map(necklace_of).collect();
        check_unimodal_chain(&necklaces)?;
        let deficiency = necklaces.first().unwrap().orbit_size.min(n);
        let deficiency = if necklaces.iter().all(|v| v.is_full()) {
            n
        } else {
            deficiency
        };
        Ok(RepresentativeChain {
            n,
            reps,
            deficiency,
        })
    }

    pub fn necklaces(&self) -> Vec<Necklace> {
        self.reps.iter().map(necklace_of).collect()
    }
}

fn check_unimodal_chain(necklaces: &[Necklace]) -> Result<()> {
    let first = necklaces.first().unwrap();
    let last = necklaces.last().unwrap();
    if first.orbit_size != last.orbit_size {
        return Err(Error::NotUnimodal(format!(
            "endpoint necklaces have orbit sizes {} and {}",
            first.orbit_size, last.orbit_size
        )));
    }
    if necklaces.len() > 2 {
        for v in &necklaces[1..necklaces.len() - 1] {
            if !v.is_full() {
                return Err(Error::NotUnimodal(format!(
                    "interior necklace {} is deficient",
                    v.canonical
                )));
            }
        }
    }
    Ok(())
}

/// Unroll one chain into its disjoint rotated copies.
///
/// For deficiency `d < n` the result is `d` full-length copies and
/// `n - d` copies with both endpoints stripped (dropped entirely when
/// nothing remains); together they visit every element of every source
/// necklace exactly once.
pub fn unroll_chain(rc: &RepresentativeChain) -> Result<Vec<Chain>> {
    let n = rc.n;
    let d = rc.deficiency;
    let mut chains = Vec::new();
    for i in 0..n as i64 {
        let elements: Vec<Subset> = if (i as u32) < d {
            rc.reps.iter().map(|x| x.rotate(i)).collect()
        } else {
            if rc.reps.len() <= 2 {
                continue;
            }
            rc.reps[1..rc.reps.len() - 1]
                .iter()
                .map(|x| x.rotate(i))
                .collect()
        };
        chains.push(Chain::new(n, elements));
    }
    Ok(chains)
}

/// Deterministic representative choice for a necklace chain: start at
/// the canonical representative of the bottom necklace and add the
/// smallest element that stays on the chain at every step.
pub fn default_representatives(n: u32, necklaces: &[Necklace]) -> Result<RepresentativeChain> {
    if necklaces.is_empty() {
        return Err(Error::Precondition("empty necklace chain".into()));
    }
    check_unimodal_chain(necklaces)?;
    let mut reps = vec![necklaces[0].canonical];
    for next in &necklaces[1..] {
        let cur = *reps.last().unwrap();
        let step = (1..=n)
            .filter(|&m| !cur.contains(m))
            .find(|&m| cur.with(m).canonical_rotation() == next.canonical)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "no element extends {} into the necklace of {}",
                    cur, next.canonical
                ))
            })?;
        reps.push(cur.with(step));
    }
    RepresentativeChain::new(n, reps)
}

/// Unroll an SCD of `N_n` to an SCD of `Q_n`, using the representative
/// walks stored in the decomposition.
pub fn unroll_scd(scd: &NecklaceScd) -> Result<ChainDecomposition> {
    let choices: Result<Vec<RepresentativeChain>> = scd
        .chains
        .iter()
        .map(|c| RepresentativeChain::new(scd.n, c.clone()))
        .collect();
    unroll_scd_with(scd, &choices?)
}

/// Unroll an SCD of `N_n` with an explicit representative choice per
/// chain. The choices must follow the decomposition's necklace chains.
pub fn unroll_scd_with(
    scd: &NecklaceScd,
    choices: &[RepresentativeChain],
) -> Result<ChainDecomposition> {
    if choices.len() != scd.chains.len() {
        return Err(Error::Precondition(format!(
            "{} choices supplied for {} chains",
            choices.len(),
            scd.chains.len()
        )));
    }
    for (chain, choice) in scd.chains.iter().zip(choices) {
        let want: Vec<u32> = chain
            .iter()
            .map(|x| x.canonical_rotation().word())
            .collect();
        let got: Vec<u32> = choice
            .reps
            .iter()
            .map(|x| x.canonical_rotation().word())
            .collect();
        if want != got {
            return Err(Error::Precondition(
                "representative choice does not follow the necklace chain".into(),
            ));
        }
    }
    let mut chains = Vec::new();
    for choice in choices {
        chains.extend(unroll_chain(choice)?);
    }
    let mut d = ChainDecomposition::new(scd.n, Kind::Cube, chains);
    d.sort_chains();
    Ok(d)
}

/// Rotation-invariant class of one unrolling step: which element,
/// measured at the canonical representative of the lower necklace, is
/// added to cross the edge. On an edge between full necklaces, two
/// unrolled chain families use disjoint cube edges exactly when their
/// labels differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    /// Canonical word of the lower necklace.
    pub lower: u32,
    /// Added element, normalized to the smallest class representative.
    pub element: u32,
}

/// The label of the step from `lower_rep` to `lower_rep + added`.
pub fn orbit_label(lower_rep: &Subset, added: u32) -> OrbitLabel {
    let n = lower_rep.n();
    let canon = lower_rep.canonical_rotation();
    let mut best = u32::MAX;
    for a in 0..n as i64 {
        if canon.rotate(a) == *lower_rep {
            let shifted = ((added as i64 - 1 - a).rem_euclid(n as i64)) as u32 + 1;
            best = best.min(shifted);
        }
    }
    OrbitLabel {
        lower: canon.word(),
        element: best,
    }
}

/// What [`try_unroll_family`] must guarantee between chains of distinct
/// decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnrollMode {
    /// No cover edge of `Q_n` used twice.
    EdgeDisjoint,
    /// At most one shared element per chain pair, except the two longest
    /// chains, which must intersect in exactly the empty and full set.
    AlmostOrthogonal,
}

/// The first pair of chains, in lexicographic `(scd_a, scd_b, chain_a,
/// chain_b)` order, that cannot be unrolled simultaneously.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConflictPair {
    pub scd_a: usize,
    pub chain_a: usize,
    pub scd_b: usize,
    pub chain_b: usize,
}

/// Outcome of a family unrolling attempt.
#[derive(Debug)]
pub enum FamilyUnroll {
    Unrolled(Vec<ChainDecomposition>),
    Conflict(ConflictPair),
}

const UNROLL_STEP_BUDGET: u64 = 50_000_000;

/// One materialized unrolling of one necklace chain.
#[derive(Debug, Clone)]
struct UnrolledFamily {
    chains: Vec<Chain>,
    /// Sorted cover edges, encoded as lower | upper << 32.
    edges: Vec<u64>,
    /// Element -> index of the containing chain.
    nodes: HashMap<u32, u32>,
}

impl UnrolledFamily {
    fn build(chains: Vec<Chain>) -> Self {
        let mut edges = Vec::new();
        let mut nodes = HashMap::new();
        for (ci, chain) in chains.iter().enumerate() {
            for x in &chain.elements {
                nodes.insert(x.word(), ci as u32);
            }
            for (a, b) in chain.edges() {
                edges.push(a.word() as u64 | (b.word() as u64) << 32);
            }
        }
        edges.sort_unstable();
        UnrolledFamily {
            chains,
            edges,
            nodes,
        }
    }

    fn edge_disjoint_from(&self, other: &UnrolledFamily) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.edges.len() && j < other.edges.len() {
            match self.edges[i].cmp(&other.edges[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    fn almost_orthogonal_with(&self, other: &UnrolledFamily, n: u32) -> bool {
        let (small, large) = if self.nodes.len() <= other.nodes.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut shared: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for (&word, &ci) in &small.nodes {
            if let Some(&cj) = large.nodes.get(&word) {
                shared.entry((ci, cj)).or_default().push(word);
            }
        }
        let full = Subset::full(n).word();
        for ((ci, cj), words) in shared {
            if words.len() <= 1 {
                continue;
            }
            let a = &small.chains[ci as usize];
            let b = &large.chains[cj as usize];
            let both_longest = a.len() as u32 == n + 1 && b.len() as u32 == n + 1;
            let exactly_extremes = words.len() == 2 && words.contains(&0) && words.contains(&full);
            if !(both_longest && exactly_extremes) {
                return false;
            }
        }
        true
    }

    fn compatible(&self, other: &UnrolledFamily, mode: UnrollMode, n: u32) -> bool {
        match mode {
            UnrollMode::EdgeDisjoint => self.edge_disjoint_from(other),
            UnrollMode::AlmostOrthogonal => self.almost_orthogonal_with(other, n),
        }
    }
}

/// The full space of unrollings of one necklace chain: an optional
/// rotation offset for deficient ends (the full-necklace case is closed
/// under rotation) and, per upward step, the choice of added element.
#[derive(Debug, Clone)]
struct ChoiceSpace {
    n: u32,
    necklaces: Vec<Necklace>,
    deficiency: u32,
    offsets: u64,
    radices: Vec<u64>,
    total: u64,
}

impl ChoiceSpace {
    fn build(n: u32, necklaces: &[Necklace]) -> Result<ChoiceSpace> {
        check_unimodal_chain(necklaces)?;
        let all_full = necklaces.iter().all(|v| v.is_full());
        let deficiency = if all_full { n } else { necklaces[0].orbit_size };
        let offsets = if all_full { 1 } else { deficiency as u64 };
        let mut radices = Vec::new();
        let mut cur = necklaces[0].canonical;
        for next in &necklaces[1..] {
            let options = step_options(n, &cur, next);
            if options.is_empty() {
                return Err(Error::Internal(format!(
                    "no step from {} into the necklace of {}",
                    cur, next.canonical
                )));
            }
            radices.push(options.len() as u64);
            cur = cur.with(options[0]);
        }
        let total = offsets * radices.iter().product::<u64>();
        Ok(ChoiceSpace {
            n,
            necklaces: necklaces.to_vec(),
            deficiency,
            offsets,
            radices,
            total,
        })
    }

    /// Decode a mixed-radix counter into a concrete unrolled family.
    fn family(&self, counter: u64) -> UnrolledFamily {
        debug_assert!(counter < self.total);
        let mut c = counter;
        let offset = (c % self.offsets) as i64;
        c /= self.offsets;
        let mut reps = vec![self.necklaces[0].canonical];
        for (next, &radix) in self.necklaces[1..].iter().zip(&self.radices) {
            let cur = *reps.last().unwrap();
            let options = step_options(self.n, &cur, next);
            debug_assert_eq!(options.len() as u64, radix);
            reps.push(cur.with(options[(c % radix) as usize]));
            c /= radix;
        }
        let n = self.n;
        let d = self.deficiency;
        let mut chains = Vec::new();
        for i in 0..n as i64 {
            let rot = offset + i;
            if (i as u32) < d {
                chains.push(Chain::new(n, reps.iter().map(|x| x.rotate(rot)).collect()));
            } else if reps.len() > 2 {
                chains.push(Chain::new(
                    n,
                    reps[1..reps.len() - 1]
                        .iter()
                        .map(|x| x.rotate(rot))
                        .collect(),
                ));
            }
        }
        UnrolledFamily::build(chains)
    }

    /// Counter whose decoded family matches the given edge set, if any.
    fn counter_of_edges(&self, edges: &[u64]) -> Option<u64> {
        (0..self.total).find(|&c| self.family(c).edges == edges)
    }
}

fn step_options(n: u32, cur: &Subset, next: &Necklace) -> Vec<u32> {
    (1..=n)
        .filter(|&m| !cur.contains(m) && cur.with(m).canonical_rotation() == next.canonical)
        .collect()
}

struct FamilySearch {
    n: u32,
    mode: UnrollMode,
    spaces: Vec<Vec<ChoiceSpace>>,
    /// (scd, chain) of the complement partner whose choice should be
    /// mirrored first, for chains of a detected complement-coupled pair.
    partner: HashMap<(usize, usize), (usize, usize)>,
    /// Materialized families, per chain and counter; backtracking
    /// revisits the same counters many times.
    family_memo: Vec<Vec<HashMap<u64, Rc<UnrolledFamily>>>>,
    /// Counter of the mirrored family, per follower chain and partner
    /// counter.
    mirror_memo: HashMap<(usize, usize, u64), Option<u64>>,
    steps: u64,
}

impl FamilySearch {
    fn family(&mut self, i: usize, j: usize, counter: u64) -> Rc<UnrolledFamily> {
        if let Some(f) = self.family_memo[i][j].get(&counter) {
            return Rc::clone(f);
        }
        let f = Rc::new(self.spaces[i][j].family(counter));
        self.family_memo[i][j].insert(counter, Rc::clone(&f));
        f
    }

    /// DFS over per-chain choices; chains of the same SCD are never
    /// checked against each other (their source necklaces are disjoint).
    fn solve(
        &mut self,
        order: &[(usize, usize)],
        chosen: &mut Vec<((usize, usize), u64, Rc<UnrolledFamily>)>,
        t: usize,
    ) -> Result<bool> {
        if t == order.len() {
            return Ok(true);
        }
        let (i, j) = order[t];
        let total = self.spaces[i][j].total;
        let mut counters: Vec<u64> = (0..total).collect();
        if let Some(&(pi, pj)) = self.partner.get(&(i, j)) {
            let placed = chosen
                .iter()
                .find(|((ci, cj), _, _)| (*ci, *cj) == (pi, pj))
                .map(|(_, c, f)| (*c, Rc::clone(f)));
            if let Some((pc, partner_fam)) = placed {
                let mirror = match self.mirror_memo.get(&(i, j, pc)) {
                    Some(m) => *m,
                    None => {
                        let mirrored = complement_edges(self.n, &partner_fam);
                        let m = self.spaces[i][j].counter_of_edges(&mirrored);
                        self.mirror_memo.insert((i, j, pc), m);
                        m
                    }
                };
                if let Some(c) = mirror {
                    counters.retain(|&x| x != c);
                    counters.insert(0, c);
                }
            }
        }
        for counter in counters {
            self.steps += 1;
            if self.steps > UNROLL_STEP_BUDGET {
                return Err(Error::UnrollBudget);
            }
            let fam = self.family(i, j, counter);
            let ok = chosen
                .iter()
                .filter(|((ci, _), _, _)| *ci != i)
                .all(|(_, _, other)| fam.compatible(other, self.mode, self.n));
            if ok {
                chosen.push(((i, j), counter, fam));
                if self.solve(order, chosen, t + 1)? {
                    return Ok(true);
                }
                chosen.pop();
            }
        }
        Ok(false)
    }
}

fn complement_edges(n: u32, fam: &UnrolledFamily) -> Vec<u64> {
    let full = Subset::full(n).word() as u64;
    let mut edges: Vec<u64> = fam
        .edges
        .iter()
        .map(|&e| {
            let lo = e & 0xFFFF_FFFF;
            let up = e >> 32;
            (!up & full) | ((!lo & full) << 32)
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Try to unroll several SCDs of `N_n` simultaneously so that the
/// results satisfy the requested mode pairwise. On failure, reports the
/// first chain pair (lexicographic with SCD indices outermost) that is
/// already impossible in isolation.
pub fn try_unroll_family(scds: &[NecklaceScd], mode: UnrollMode) -> Result<FamilyUnroll> {
    if scds.is_empty() {
        return Ok(FamilyUnroll::Unrolled(Vec::new()));
    }
    let n = scds[0].n;
    if scds.iter().any(|s| s.n != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: scds.iter().find(|s| s.n != n).unwrap().n,
        });
    }

    let mut spaces: Vec<Vec<ChoiceSpace>> = Vec::new();
    for scd in scds {
        let mut per_chain = Vec::new();
        for chain in &scd.chains {
            let necklaces: Vec<Necklace> = chain.iter().map(necklace_of).collect();
            per_chain.push(ChoiceSpace::build(n, &necklaces)?);
        }
        spaces.push(per_chain);
    }

    // reject capacity violations before searching
    let poset = build_poset(n)?;
    let mut usage: HashMap<(usize, usize), u32> = HashMap::new();
    for scd in scds {
        for chain in &scd.chains {
            for w in chain.windows(2) {
                let lo = poset.node_of(&w[0]);
                let hi = poset.node_of(&w[1]);
                *usage.entry((lo, hi)).or_insert(0) += 1;
            }
        }
    }
    for ((lo, hi), used) in &usage {
        let capacity = poset.up_edges[*lo]
            .iter()
            .map(|&i| poset.edges[i])
            .find(|e| e.upper == *hi)
            .map(|e| e.capacity)
            .ok_or_else(|| Error::Internal("chain step is not a poset edge".into()))?;
        if *used > capacity {
            return Err(Error::CapacityViolation(format!(
                "edge {} -> {} used {} times, capacity {}",
                poset.nodes[*lo].canonical, poset.nodes[*hi].canonical, used, capacity
            )));
        }
    }

    let partner = detect_complement_partners(scds);

    // deficient-end chains carry the rotation coupling; place them first
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (i, scd) in scds.iter().enumerate() {
        for j in 0..scd.chains.len() {
            order.push((i, j));
        }
    }
    order.sort_by_key(|&(i, j)| (spaces[i][j].deficiency >= n, i, j));

    let family_memo = spaces
        .iter()
        .map(|per| per.iter().map(|_| HashMap::new()).collect())
        .collect();
    let mut search = FamilySearch {
        n,
        mode,
        spaces,
        partner,
        family_memo,
        mirror_memo: HashMap::new(),
        steps: 0,
    };
    let mut chosen = Vec::new();
    if search.solve(&order, &mut chosen, 0)? {
        let mut out: Vec<Vec<Chain>> = vec![Vec::new(); scds.len()];
        for ((i, _), _, fam) in chosen {
            out[i].extend(fam.chains.clone());
        }
        let decompositions = out
            .into_iter()
            .map(|chains| {
                let mut d = ChainDecomposition::new(n, Kind::Cube, chains);
                d.sort_chains();
                d
            })
            .collect();
        return Ok(FamilyUnroll::Unrolled(decompositions));
    }

    // global failure: report the first pair that fails in isolation
    for a in 0..scds.len() {
        for b in a + 1..scds.len() {
            for ja in 0..scds[a].chains.len() {
                for jb in 0..scds[b].chains.len() {
                    if !pair_interacts(&search.spaces[a][ja], &search.spaces[b][jb], mode) {
                        continue;
                    }
                    if !pair_unrollable(
                        &search.spaces[a][ja],
                        &search.spaces[b][jb],
                        mode,
                        n,
                        &mut search.steps,
                    )? {
                        return Ok(FamilyUnroll::Conflict(ConflictPair {
                            scd_a: a,
                            chain_a: ja,
                            scd_b: b,
                            chain_b: jb,
                        }));
                    }
                }
            }
        }
    }
    Err(Error::NoBlockingPair)
}

fn detect_complement_partners(scds: &[NecklaceScd]) -> HashMap<(usize, usize), (usize, usize)> {
    let mut partner = HashMap::new();
    let mut paired = vec![false; scds.len()];
    for i in 0..scds.len() {
        if paired[i] {
            continue;
        }
        for i2 in i + 1..scds.len() {
            if paired[i2] {
                continue;
            }
            if scds[i].complement().necklace_chain_words() != scds[i2].necklace_chain_words() {
                continue;
            }
            // match each chain of i to the complementary chain of i2
            let mut used = vec![false; scds[i2].chains.len()];
            let mut ok = true;
            for (j, chain) in scds[i].chains.iter().enumerate() {
                let mut mirrored: Vec<u32> = chain
                    .iter()
                    .map(|x| x.complement().canonical_rotation().word())
                    .collect();
                mirrored.reverse();
                let m = (0..scds[i2].chains.len()).find(|&j2| {
                    !used[j2]
                        && scds[i2].chains[j2]
                            .iter()
                            .map(|x| x.canonical_rotation().word())
                            .collect::<Vec<u32>>()
                            == mirrored
                });
                match m {
                    Some(j2) => {
                        used[j2] = true;
                        partner.insert((i2, j2), (i, j));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                paired[i] = true;
                paired[i2] = true;
                break;
            }
            // roll back partial matches of a failed pairing
            partner.retain(|&(pi, _), _| pi != i2);
        }
    }
    partner
}

fn pair_interacts(a: &ChoiceSpace, b: &ChoiceSpace, mode: UnrollMode) -> bool {
    let necklaces =
        |s: &ChoiceSpace| -> Vec<u32> { s.necklaces.iter().map(|v| v.canonical.word()).collect() };
    let (na, nb) = (necklaces(a), necklaces(b));
    let shared = na.iter().filter(|w| nb.contains(w)).count();
    match mode {
        UnrollMode::EdgeDisjoint => {
            // a shared necklace edge requires two shared necklaces in a row
            a.necklaces.windows(2).any(|w| {
                nb.windows(2)
                    .any(|w2| w[0].canonical.word() == w2[0] && w[1].canonical.word() == w2[1])
            })
        }
        UnrollMode::AlmostOrthogonal => shared >= 2,
    }
}

fn pair_unrollable(
    a: &ChoiceSpace,
    b: &ChoiceSpace,
    mode: UnrollMode,
    n: u32,
    steps: &mut u64,
) -> Result<bool> {
    // materialize the smaller side once; conflicts only arise between
    // short deficient-ended chains, so exhausting the product stays cheap
    let (outer, inner) = if a.total <= b.total { (b, a) } else { (a, b) };
    let inner_families: Vec<UnrolledFamily> = (0..inner.total).map(|c| inner.family(c)).collect();
    for ca in 0..outer.total {
        let fa = outer.family(ca);
        for fb in &inner_families {
            *steps += 1;
            if *steps > UNROLL_STEP_BUDGET {
                return Err(Error::UnrollBudget);
            }
            if fa.compatible(fb, mode, n) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gks_scd, jordan_scd};

    fn subs(n: u32, sets: &[&[u32]]) -> Vec<Subset> {
        sets.iter()
            .map(|s| Subset::from_elements(n, s.iter().copied()))
            .collect()
    }

    #[test]
    fn unroll_full_chain_in_q5() {
        let reps = subs(5, &[&[1], &[1, 2], &[1, 2, 3], &[1, 2, 3, 4]]);
        let rc = RepresentativeChain::new(5, reps).unwrap();
        assert_eq!(rc.deficiency, 5);
        let chains = unroll_chain(&rc).unwrap();
        assert_eq!(chains.len(), 5);
        let mut all: Vec<u32> = chains
            .iter()
            .flat_map(|c| c.elements.iter().map(|x| x.word()))
            .collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 20);
    }

    #[test]
    fn unroll_deficient_chain_in_q8() {
        let reps = subs(
            8,
            &[
                &[1, 5],
                &[1, 2, 5],
                &[1, 2, 3, 5],
                &[1, 2, 3, 5, 6],
                &[1, 2, 3, 5, 6, 7],
            ],
        );
        let rc = RepresentativeChain::new(8, reps).unwrap();
        assert_eq!(rc.deficiency, 4);
        let chains = unroll_chain(&rc).unwrap();
        let mut sizes: Vec<usize> = chains.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 3, 3, 5, 5, 5, 5]);
        // disjoint cover of the source necklaces
        let mut all: Vec<u32> = chains
            .iter()
            .flat_map(|c| c.elements.iter().map(|x| x.word()))
            .collect();
        all.sort_unstable();
        let before = all.len();
        all.dedup();
        assert_eq!(all.len(), before);
        assert_eq!(all.len(), 4 + 8 + 8 + 8 + 4);
    }

    #[test]
    fn unroll_singleton_deficient_necklace() {
        let reps = subs(6, &[&[1, 3, 5]]);
        let rc = RepresentativeChain::new(6, reps).unwrap();
        assert_eq!(rc.deficiency, 2);
        let chains = unroll_chain(&rc).unwrap();
        assert_eq!(chains.len(), 2);
        assert!(chains.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn non_unimodal_chain_rejected() {
        // <{1,4}> is deficient and interior
        let reps = subs(
            6,
            &[&[1], &[1, 4], &[1, 2, 4], &[1, 2, 4, 5], &[1, 2, 4, 5, 6]],
        );
        assert!(matches!(
            RepresentativeChain::new(6, reps),
            Err(Error::NotUnimodal(_))
        ));
    }

    #[test]
    fn default_representatives_walks_smallest_elements() {
        let necklaces: Vec<Necklace> = subs(5, &[&[1], &[1, 2], &[1, 2, 3], &[1, 2, 3, 4]])
            .iter()
            .map(necklace_of)
            .collect();
        let rc = default_representatives(5, &necklaces).unwrap();
        // canonical bottom of <{1}> is 00001 = {5}; each step adds the
        // smallest element staying on the chain
        assert_eq!(
            rc.reps,
            subs(5, &[&[5], &[1, 5], &[1, 2, 5], &[1, 2, 3, 5]])
        );
        assert_eq!(rc.reps[0], necklaces[0].canonical);
        let same_chain: Vec<u32> = rc
            .reps
            .iter()
            .map(|x| x.canonical_rotation().word())
            .collect();
        let want: Vec<u32> = necklaces.iter().map(|v| v.canonical.word()).collect();
        assert_eq!(same_chain, want);
    }

    #[test]
    fn default_representatives_of_singleton_is_canonical() {
        let v = necklace_of(&Subset::from_elements(6, [2, 5]));
        let rc = default_representatives(6, &[v]).unwrap();
        assert_eq!(rc.reps, vec![v.canonical]);
    }

    #[test]
    fn alternative_representatives_accepted() {
        let reps = subs(5, &[&[1], &[1, 5], &[1, 4, 5], &[1, 2, 4, 5]]);
        let rc = RepresentativeChain::new(5, reps).unwrap();
        let chains = unroll_chain(&rc).unwrap();
        assert_eq!(chains.len(), 5);
    }

    #[test]
    fn unroll_scd_of_q5_jordan() {
        let scd = jordan_scd(5).unwrap();
        let d = unroll_scd(&scd).unwrap();
        assert_eq!(d.chains.len(), 10);
        let mut words: Vec<u32> = d
            .chains
            .iter()
            .flat_map(|c| c.elements.iter().map(|x| x.word()))
            .collect();
        words.sort_unstable();
        words.dedup();
        assert_eq!(words.len(), 32);
    }

    #[test]
    fn unroll_scd_of_q7_gks_partitions_the_cube() {
        let scd = gks_scd(7).unwrap();
        let d = unroll_scd(&scd).unwrap();
        assert_eq!(d.chains.len(), 35);
        let mut words: Vec<u32> = d
            .chains
            .iter()
            .flat_map(|c| c.elements.iter().map(|x| x.word()))
            .collect();
        words.sort_unstable();
        words.dedup();
        assert_eq!(words.len(), 128);
    }

    #[test]
    fn unroll_scd_of_q2_gks() {
        // the necklace spine unrolls to the full chain plus the stripped
        // singleton {2}
        let d = unroll_scd(&gks_scd(2).unwrap()).unwrap();
        let words: Vec<Vec<String>> = d
            .chains
            .iter()
            .map(|c| c.elements.iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(words, vec![vec!["00", "10", "11"], vec!["01"]]);
    }

    #[test]
    fn unroll_scd_of_q1() {
        let scd = jordan_scd(1).unwrap();
        let d = unroll_scd(&scd).unwrap();
        assert_eq!(d.chains.len(), 1);
        assert_eq!(d.chains[0].len(), 2);
    }

    #[test]
    fn figure_of_eight_conflict() {
        // two unimodal chains of N_8 between the same deficient ends that
        // cannot be unrolled edge-disjointly
        let a = NecklaceScd {
            n: 8,
            chains: vec![subs(
                8,
                &[
                    &[1, 5],
                    &[1, 2, 5],
                    &[1, 2, 3, 5],
                    &[1, 2, 3, 5, 6],
                    &[1, 2, 3, 5, 6, 7],
                ],
            )],
        };
        let b = NecklaceScd {
            n: 8,
            chains: vec![subs(
                8,
                &[
                    &[1, 5],
                    &[1, 2, 5],
                    &[1, 2, 5, 7],
                    &[1, 2, 5, 6, 7],
                    &[1, 2, 3, 5, 6, 7],
                ],
            )],
        };
        let out = try_unroll_family(&[a, b], UnrollMode::EdgeDisjoint).unwrap();
        match out {
            FamilyUnroll::Conflict(pair) => {
                assert_eq!(
                    pair,
                    ConflictPair {
                        scd_a: 0,
                        chain_a: 0,
                        scd_b: 1,
                        chain_b: 0
                    }
                );
            }
            FamilyUnroll::Unrolled(_) => panic!("expected a conflict"),
        }
    }

    #[test]
    fn single_scd_unrolls_edge_disjointly() {
        let scd = gks_scd(7).unwrap();
        let out = try_unroll_family(&[scd], UnrollMode::EdgeDisjoint).unwrap();
        assert!(matches!(out, FamilyUnroll::Unrolled(ref v) if v.len() == 1));
    }

    #[test]
    fn capacity_violation_rejected_before_search() {
        let scd = gks_scd(5).unwrap();
        let tripled = vec![scd.clone(), scd.clone(), scd];
        // the middle edges of N_5 have capacity 2; three identical SCDs
        // exceed it
        assert!(matches!(
            try_unroll_family(&tripled, UnrollMode::EdgeDisjoint),
            Err(Error::CapacityViolation(_))
        ));
    }
}
