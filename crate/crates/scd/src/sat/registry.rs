//! Variable bookkeeping for the necklace-SCD formula.

use std::collections::HashMap;

/// How one decomposition index participates in the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScdRole {
    /// Owns its own edge and node variables.
    Free,
    /// Substituted by constants; the payload indexes `CnfInstance::fixed`.
    Pinned(usize),
    /// Complement of a free leader: its variables are the leader's,
    /// looked up through the complement bijection on nodes and edges.
    Follower { leader: usize },
}

/// A literal source: either a constant fixed by a pinned decomposition
/// or a registered variable (positive DIMACS id).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRef {
    Const(bool),
    Lit(i32),
}

/// One sidecar line: the meaning of a registered variable.
#[derive(Debug, Clone)]
pub enum RegistryEntry {
    /// `(scd, chain, edge)` for an edge variable.
    Edge(usize, usize, usize),
    /// `(scd, chain, node)` for a node variable.
    Node(usize, usize, usize),
}

/// Dense ids for the edge (`X`) and node (`Y`) variables of the free
/// decompositions, assigned decomposition-major, then chain, edges
/// before nodes, each in canonical graph order.
#[derive(Debug, Clone, Default)]
pub struct VariableRegistry {
    x: HashMap<(usize, usize, usize), i32>,
    y: HashMap<(usize, usize, usize), i32>,
    pub entries: Vec<RegistryEntry>,
    pub registered: i32,
}

impl VariableRegistry {
    pub fn register_edge(&mut self, scd: usize, chain: usize, edge: usize) -> i32 {
        self.registered += 1;
        let id = self.registered;
        self.x.insert((scd, chain, edge), id);
        self.entries.push(RegistryEntry::Edge(scd, chain, edge));
        id
    }

    pub fn register_node(&mut self, scd: usize, chain: usize, node: usize) -> i32 {
        self.registered += 1;
        let id = self.registered;
        self.y.insert((scd, chain, node), id);
        self.entries.push(RegistryEntry::Node(scd, chain, node));
        id
    }

    pub fn edge_var(&self, scd: usize, chain: usize, edge: usize) -> Option<i32> {
        self.x.get(&(scd, chain, edge)).copied()
    }

    pub fn node_var(&self, scd: usize, chain: usize, node: usize) -> Option<i32> {
        self.y.get(&(scd, chain, node)).copied()
    }
}
