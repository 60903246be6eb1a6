//! The CNF whose models are families of edge-disjoint unimodal SCDs of
//! the reduced necklace graph.
//!
//! Edge variables say that an edge is used by a given chain of a given
//! decomposition, node variables the same for nodes. Five clause
//! families tie them together: edge-node linking, chain presence per
//! level, node-disjointness of chains within one decomposition,
//! unimodality of deficient necklaces, and per-edge capacity over the
//! whole family. Pinned decompositions enter as constants, coupled ones
//! share the leader's variables through the complement bijection.

use super::cardinality::at_most_k;
use super::registry::{RegistryEntry, ScdRole, VarRef, VariableRegistry};
use super::{SearchConfig, SearchMode};
use crate::constructions::NecklaceScd;
use crate::error::{Error, Result};
use crate::necklace::{build_poset, ReducedNecklaceGraph};
use crate::unroll::ConflictPair;
use crate::verify::check_unimodal;
use std::collections::HashSet;
use std::io::Write;

#[derive(Debug, Clone)]
pub struct CnfInstance {
    pub n: u32,
    pub s: usize,
    pub mode: SearchMode,
    pub graph: ReducedNecklaceGraph,
    /// Chain sizes in decreasing order; index is the chain slot.
    pub profile: Vec<u32>,
    /// Bottom level of each chain slot.
    pub spans: Vec<u32>,
    pub roles: Vec<ScdRole>,
    /// Pinned decompositions with chains in slot order.
    pub fixed: Vec<NecklaceScd>,
    pinned_edges: Vec<Vec<Vec<usize>>>,
    pinned_nodes: Vec<Vec<Vec<usize>>>,
    pub registry: VariableRegistry,
    pub clauses: Vec<Vec<i32>>,
    pub var_count: i32,
    mirror_node: Vec<usize>,
    mirror_edge: Vec<usize>,
}

impl CnfInstance {
    pub fn chain_count(&self) -> usize {
        self.profile.len()
    }

    fn span(&self, j: usize) -> (u32, u32) {
        (self.spans[j], self.n - self.spans[j])
    }

    fn edge_feasible(&self, j: usize, edge: usize) -> bool {
        let e = self.graph.edge(edge);
        let level = self.graph.poset.nodes[e.lower].level();
        let (lo, hi) = self.span(j);
        lo <= level && level < hi
    }

    fn node_feasible(&self, j: usize, node: usize) -> bool {
        let level = self.graph.poset.nodes[node].level();
        let (lo, hi) = self.span(j);
        (lo..=hi).contains(&level)
    }

    /// Literal source for "edge is used by chain `j` of decomposition
    /// `i`"; `None` when the pair is outside the chain's levels.
    pub fn x_ref(&self, i: usize, j: usize, edge: usize) -> Option<VarRef> {
        if !self.edge_feasible(j, edge) || !self.graph.retained[edge] {
            return None;
        }
        match &self.roles[i] {
            ScdRole::Free => self.registry.edge_var(i, j, edge).map(VarRef::Lit),
            ScdRole::Pinned(p) => Some(VarRef::Const(
                self.pinned_edges[*p][j].binary_search(&edge).is_ok(),
            )),
            ScdRole::Follower { leader } => self.x_ref(*leader, j, self.mirror_edge[edge]),
        }
    }

    /// Literal source for "node is on chain `j` of decomposition `i`".
    pub fn y_ref(&self, i: usize, j: usize, node: usize) -> Option<VarRef> {
        if !self.node_feasible(j, node) {
            return None;
        }
        match &self.roles[i] {
            ScdRole::Free => self.registry.node_var(i, j, node).map(VarRef::Lit),
            ScdRole::Pinned(p) => Some(VarRef::Const(
                self.pinned_nodes[*p][j].binary_search(&node).is_ok(),
            )),
            ScdRole::Follower { leader } => self.y_ref(*leader, j, self.mirror_node[node]),
        }
    }

    pub fn add_clause(&mut self, clause: Vec<i32>) {
        self.clauses.push(clause);
    }

    /// DIMACS serialization: a `p cnf` header, then one zero-terminated
    /// clause per line, variables numbered in registry order.
    pub fn write_dimacs<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "p cnf {} {}", self.var_count, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(w, "{} ", lit)?;
            }
            writeln!(w, "0")?;
        }
        Ok(())
    }

    /// Mapping from registered variables to their meaning, one line per
    /// variable, for external audit of models. Indices are 1-based.
    pub fn write_sidecar<W: Write>(&self, w: &mut W) -> Result<()> {
        for (id, entry) in self.registry.entries.iter().enumerate() {
            let id = id + 1;
            match entry {
                RegistryEntry::Edge(i, j, e) => {
                    let edge = self.graph.edge(*e);
                    writeln!(
                        w,
                        "X {} {} {}-{} {}",
                        i + 1,
                        j + 1,
                        self.graph.poset.nodes[edge.lower].canonical,
                        self.graph.poset.nodes[edge.upper].canonical,
                        id
                    )?;
                }
                RegistryEntry::Node(i, j, u) => {
                    writeln!(
                        w,
                        "Y {} {} {} {}",
                        i + 1,
                        j + 1,
                        self.graph.poset.nodes[*u].canonical,
                        id
                    )?;
                }
            }
        }
        Ok(())
    }

    /// Clause forbidding the two conflicting chains' edge sets from
    /// appearing together again. Pinned edges contribute constants and
    /// fall out of the clause; if every literal is constant the clause
    /// is empty and the formula becomes unsatisfiable, which is the
    /// correct outcome for a conflict between two pinned chains.
    pub fn blocking_clause(&self, scds: &[NecklaceScd], pair: &ConflictPair) -> Result<Vec<i32>> {
        let mut clause = Vec::new();
        for &(i, j) in &[(pair.scd_a, pair.chain_a), (pair.scd_b, pair.chain_b)] {
            let chain = &scds[i].chains[j];
            for w in chain.windows(2) {
                let lo = self.graph.poset.node_of(&w[0]);
                let hi = self.graph.poset.node_of(&w[1]);
                let edge = self
                    .graph
                    .edge_between(lo, hi)
                    .ok_or_else(|| Error::Internal("conflict chain step off graph".into()))?;
                match self.x_ref(i, j, edge) {
                    Some(VarRef::Lit(l)) => clause.push(-l),
                    Some(VarRef::Const(true)) => {}
                    Some(VarRef::Const(false)) | None => {
                        return Err(Error::Internal(
                            "conflict chain uses an edge its variables deny".into(),
                        ))
                    }
                }
            }
        }
        clause.sort_unstable();
        clause.dedup();
        Ok(clause)
    }
}

/// Build the five clause families for the requested configuration.
pub fn encode_phi(cfg: &SearchConfig) -> Result<CnfInstance> {
    let n = cfg.n;
    let s = cfg.s;
    if s == 0 {
        return Err(Error::Precondition("family size must be at least 1".into()));
    }
    let graph = build_poset(n)?.reduce();
    let level_sizes = graph.poset.level_sizes();

    // chain slots from the level sizes
    let mut profile = Vec::new();
    for k in 0..=n / 2 {
        let prev = if k == 0 {
            0
        } else {
            level_sizes[k as usize - 1]
        };
        let new_chains = level_sizes[k as usize]
            .checked_sub(prev)
            .ok_or_else(|| Error::Internal("necklace level sizes are not unimodal".into()))?;
        for _ in 0..new_chains {
            profile.push(n + 1 - 2 * k);
        }
    }
    let spans: Vec<u32> = profile.iter().map(|&size| (n + 1 - size) / 2).collect();
    let chain_count = profile.len();

    // roles
    let mut roles = vec![ScdRole::Free; s];
    let mut fixed = Vec::new();
    for (idx, scd) in &cfg.fixed {
        if *idx >= s {
            return Err(Error::Precondition(format!(
                "pinned index {idx} out of range"
            )));
        }
        if !matches!(roles[*idx], ScdRole::Free) {
            return Err(Error::Precondition(format!(
                "decomposition {idx} configured twice"
            )));
        }
        roles[*idx] = ScdRole::Pinned(fixed.len());
        fixed.push(scd.clone());
    }
    for (leader, follower) in &cfg.coupled {
        for idx in [leader, follower] {
            if *idx >= s {
                return Err(Error::Precondition(format!(
                    "coupled index {idx} out of range"
                )));
            }
        }
        if leader == follower
            || !matches!(roles[*leader], ScdRole::Free)
            || !matches!(roles[*follower], ScdRole::Free)
        {
            return Err(Error::Precondition(
                "coupled indices must be distinct, free, and used once".into(),
            ));
        }
        roles[*follower] = ScdRole::Follower { leader: *leader };
    }

    // complement bijection on nodes and edges
    let node_count = graph.poset.nodes.len();
    let mut mirror_node = vec![0usize; node_count];
    for (u, v) in graph.poset.nodes.iter().enumerate() {
        mirror_node[u] = graph.poset.node_of(&v.canonical.complement());
    }
    let mut mirror_edge = vec![0usize; graph.poset.edges.len()];
    for (ei, e) in graph.poset.edges.iter().enumerate() {
        if !graph.retained[ei] {
            continue;
        }
        let m = graph
            .edge_between(mirror_node[e.upper], mirror_node[e.lower])
            .ok_or_else(|| Error::Internal("edge reduction is not complement-symmetric".into()))?;
        if graph.edge(m).capacity != e.capacity {
            return Err(Error::Internal(
                "capacity is not complement-symmetric".into(),
            ));
        }
        mirror_edge[ei] = m;
    }

    // pinned decompositions: slot-match and precompute edge/node sets
    let mut pinned_edges = Vec::new();
    let mut pinned_nodes = Vec::new();
    for scd in &mut fixed {
        if scd.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: scd.n,
            });
        }
        let unimodal = check_unimodal(scd);
        if !unimodal.pass {
            return Err(Error::Precondition(format!(
                "pinned decomposition: {unimodal}"
            )));
        }
        scd.validate_partition()
            .map_err(|e| Error::Precondition(format!("pinned decomposition: {e}")))?;
        scd.sort_chains();
        if scd.chains.len() != chain_count {
            return Err(Error::Precondition(format!(
                "pinned decomposition has {} chains, expected {chain_count}",
                scd.chains.len()
            )));
        }
        let mut edges_per_chain = Vec::new();
        let mut nodes_per_chain = Vec::new();
        for (j, chain) in scd.chains.iter().enumerate() {
            if chain.len() as u32 != profile[j] {
                return Err(Error::Precondition(
                    "pinned decomposition does not match the chain profile".into(),
                ));
            }
            let mut nodes: Vec<usize> = chain.iter().map(|x| graph.poset.node_of(x)).collect();
            let mut edges = Vec::new();
            for w in nodes.windows(2) {
                let e = graph.edge_between(w[0], w[1]).ok_or_else(|| {
                    Error::Precondition(
                        "pinned decomposition uses an edge removed by reduction".into(),
                    )
                })?;
                edges.push(e);
            }
            nodes.sort_unstable();
            edges.sort_unstable();
            nodes_per_chain.push(nodes);
            edges_per_chain.push(edges);
        }
        pinned_edges.push(edges_per_chain);
        pinned_nodes.push(nodes_per_chain);
    }

    let mut inst = CnfInstance {
        n,
        s,
        mode: cfg.mode,
        graph,
        profile,
        spans,
        roles,
        fixed,
        pinned_edges,
        pinned_nodes,
        registry: VariableRegistry::default(),
        clauses: Vec::new(),
        var_count: 0,
        mirror_node,
        mirror_edge,
    };

    // variable registration: decomposition-major, then chain, edges
    // before nodes, both in canonical graph order
    for i in 0..s {
        if !matches!(inst.roles[i], ScdRole::Free) {
            continue;
        }
        for j in 0..chain_count {
            for (ei, _) in inst.graph.retained_edges() {
                if inst.edge_feasible(j, ei) {
                    inst.registry.register_edge(i, j, ei);
                }
            }
            for u in 0..node_count {
                if inst.node_feasible(j, u) {
                    inst.registry.register_node(i, j, u);
                }
            }
        }
    }
    inst.var_count = inst.registry.registered;

    emit_structural_clauses(&mut inst)?;
    emit_capacity_clauses(&mut inst)?;
    Ok(inst)
}

fn lit(r: VarRef) -> i32 {
    match r {
        VarRef::Lit(l) => l,
        VarRef::Const(_) => unreachable!("constant where a literal was expected"),
    }
}

fn emit_structural_clauses(inst: &mut CnfInstance) -> Result<()> {
    let n = inst.n;
    let chain_count = inst.chain_count();
    let node_count = inst.graph.poset.nodes.len();
    let mut clauses: Vec<Vec<i32>> = Vec::new();

    for i in 0..inst.s {
        let free = matches!(inst.roles[i], ScdRole::Free);
        let follower = matches!(inst.roles[i], ScdRole::Follower { .. });
        if free {
            for j in 0..chain_count {
                let (lo, hi) = inst.span(j);
                // link edges to their endpoints
                for (ei, e) in inst.graph.poset.edges.iter().enumerate() {
                    if !inst.graph.retained[ei] || !inst.edge_feasible(j, ei) {
                        continue;
                    }
                    let x = lit(inst.x_ref(i, j, ei).unwrap());
                    let y_lo = lit(inst.y_ref(i, j, e.lower).unwrap());
                    let y_hi = lit(inst.y_ref(i, j, e.upper).unwrap());
                    clauses.push(vec![-x, y_lo]);
                    clauses.push(vec![-x, y_hi]);
                }
                for u in 0..node_count {
                    if !inst.node_feasible(j, u) {
                        continue;
                    }
                    let level = inst.graph.poset.nodes[u].level();
                    let y = lit(inst.y_ref(i, j, u).unwrap());
                    // a visited node continues along the chain in every
                    // direction the chain extends; deficient necklaces
                    // lose their middle-pointing edges in the reduction,
                    // so an empty disjunction forbids the visit
                    if level < hi {
                        let mut c = vec![-y];
                        for &ei in &inst.graph.up_edges[u] {
                            if inst.edge_feasible(j, ei) {
                                c.push(lit(inst.x_ref(i, j, ei).unwrap()));
                            }
                        }
                        clauses.push(c);
                    }
                    if level > lo {
                        let mut c = vec![-y];
                        for &ei in &inst.graph.down_edges[u] {
                            if inst.edge_feasible(j, ei) {
                                c.push(lit(inst.x_ref(i, j, ei).unwrap()));
                            }
                        }
                        clauses.push(c);
                    }
                }
                // the chain is present on every level it spans
                for level in lo..=hi {
                    let c: Vec<i32> = inst.graph.poset.levels[level as usize]
                        .iter()
                        .map(|&u| lit(inst.y_ref(i, j, u).unwrap()))
                        .collect();
                    clauses.push(c);
                }
            }
            // chains of one decomposition are node-disjoint
            for u in 0..node_count {
                let holders: Vec<i32> = (0..chain_count)
                    .filter(|&j| inst.node_feasible(j, u))
                    .map(|j| lit(inst.y_ref(i, j, u).unwrap()))
                    .collect();
                for a in 0..holders.len() {
                    for b in a + 1..holders.len() {
                        clauses.push(vec![-holders[a], -holders[b]]);
                    }
                }
            }
        }
        if free || follower {
            // unimodality: a deficient necklace in the lower half forces a
            // deficient partner of the same orbit size at the mirrored
            // level, and deficient necklaces never sit strictly inside a
            // chain's span
            for (u, v) in inst.graph.poset.nodes.iter().enumerate() {
                if v.is_full() {
                    continue;
                }
                let level = v.level();
                for j in 0..chain_count {
                    if !inst.node_feasible(j, u) {
                        continue;
                    }
                    let (lo, hi) = inst.span(j);
                    let y = lit(inst.y_ref(i, j, u).unwrap());
                    if level > lo && level < hi {
                        clauses.push(vec![-y]);
                        continue;
                    }
                    if 2 * level < n && level == lo {
                        let mut c = vec![-y];
                        for &p in &inst.graph.poset.levels[(n - level) as usize] {
                            if inst.graph.poset.nodes[p].orbit_size == v.orbit_size {
                                c.push(lit(inst.y_ref(i, j, p).unwrap()));
                            }
                        }
                        clauses.push(c);
                    }
                }
            }
        }
    }
    inst.clauses.extend(clauses);
    Ok(())
}

fn emit_capacity_clauses(inst: &mut CnfInstance) -> Result<()> {
    let chain_count = inst.chain_count();
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut var_count = inst.var_count;
    for (ei, e) in inst.graph.poset.edges.iter().enumerate() {
        if !inst.graph.retained[ei] {
            continue;
        }
        let mut lits = Vec::new();
        let mut pinned_used = 0usize;
        for i in 0..inst.s {
            for j in 0..chain_count {
                match inst.x_ref(i, j, ei) {
                    None | Some(VarRef::Const(false)) => {}
                    Some(VarRef::Const(true)) => pinned_used += 1,
                    Some(VarRef::Lit(l)) => lits.push(l),
                }
            }
        }
        let capacity = e.capacity as usize;
        if pinned_used > capacity {
            return Err(Error::CapacityViolation(format!(
                "pinned decompositions use an edge {} times, capacity {}",
                pinned_used, capacity
            )));
        }
        let bound = capacity - pinned_used;
        if lits.len() <= bound {
            continue;
        }
        if bound == 0 {
            for l in lits {
                clauses.push(vec![-l]);
            }
        } else if capacity == 1 {
            for a in 0..lits.len() {
                for b in a + 1..lits.len() {
                    clauses.push(vec![-lits[a], -lits[b]]);
                }
            }
        } else {
            var_count = at_most_k(&lits, bound, var_count, &mut clauses);
        }
    }
    inst.var_count = var_count;
    inst.clauses.extend(clauses);
    Ok(())
}

/// Forbid capacity-1 diamonds: two chains from two decompositions may
/// not traverse the two sides of a diamond whose four edges all have
/// capacity 1, since their unrolled copies would then share both the
/// bottom and the top element of a cube diamond. Returns the number of
/// clauses added.
pub fn add_diamond_clauses(inst: &mut CnfInstance) -> Result<usize> {
    let n = inst.n;
    let chain_count = inst.chain_count();
    let mut diamonds: Vec<(u32, usize, usize, usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize, usize, usize)> = HashSet::new();
    for (x_idx, x) in inst.graph.poset.nodes.iter().enumerate() {
        let level = x.level();
        if level + 2 > n {
            continue;
        }
        let rep = x.canonical;
        for alpha in 1..=n {
            if rep.contains(alpha) {
                continue;
            }
            for beta in alpha + 1..=n {
                if rep.contains(beta) {
                    continue;
                }
                let via_a = rep.with(alpha);
                let via_b = rep.with(beta);
                let v = inst.graph.poset.node_of(&via_a);
                let w = inst.graph.poset.node_of(&via_b);
                if v == w {
                    continue;
                }
                let y = inst.graph.poset.node_of(&via_a.with(beta));
                let Some(e) = inst.graph.edge_between(x_idx, v) else {
                    continue;
                };
                let Some(f) = inst.graph.edge_between(v, y) else {
                    continue;
                };
                let Some(g) = inst.graph.edge_between(x_idx, w) else {
                    continue;
                };
                let Some(h) = inst.graph.edge_between(w, y) else {
                    continue;
                };
                if [e, f, g, h]
                    .iter()
                    .any(|&i| inst.graph.edge(i).capacity != 1)
                {
                    continue;
                }
                let key = if (e, f) <= (g, h) {
                    (e, f, g, h)
                } else {
                    (g, h, e, f)
                };
                if seen.insert(key) {
                    diamonds.push((level, key.0, key.1, key.2, key.3));
                }
            }
        }
    }

    let mut added = 0usize;
    let mut emitted: HashSet<Vec<i32>> = HashSet::new();
    for &(level, e, f, g, h) in &diamonds {
        for i in 0..inst.s {
            for i2 in i + 1..inst.s {
                for j in 0..chain_count {
                    let (lo, hi) = inst.span(j);
                    if !(lo <= level && level + 2 <= hi) {
                        continue;
                    }
                    for j2 in 0..chain_count {
                        let (lo2, hi2) = inst.span(j2);
                        if !(lo2 <= level && level + 2 <= hi2) {
                            continue;
                        }
                        for (p, q) in [((e, f), (g, h)), ((g, h), (e, f))] {
                            let refs = [
                                inst.x_ref(i, j, p.0),
                                inst.x_ref(i, j, p.1),
                                inst.x_ref(i2, j2, q.0),
                                inst.x_ref(i2, j2, q.1),
                            ];
                            let mut clause = Vec::new();
                            let mut satisfied = false;
                            for r in refs {
                                match r {
                                    None | Some(VarRef::Const(false)) => {
                                        satisfied = true;
                                        break;
                                    }
                                    Some(VarRef::Const(true)) => {}
                                    Some(VarRef::Lit(l)) => clause.push(-l),
                                }
                            }
                            if satisfied {
                                continue;
                            }
                            if clause.is_empty() {
                                return Err(Error::Precondition(
                                    "pinned decompositions traverse both sides of a diamond".into(),
                                ));
                            }
                            clause.sort_unstable();
                            clause.dedup();
                            if emitted.insert(clause.clone()) {
                                inst.clauses.push(clause);
                                added += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(added)
}
