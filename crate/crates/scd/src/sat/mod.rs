//! SAT-based search for families of edge-disjoint unimodal SCDs of the
//! reduced necklace graph, with incremental augmentation until the
//! family unrolls to the requested kind of SCD family of the n-cube.

mod cardinality;
mod decode;
mod encode;
mod registry;
mod search;
mod solver;

pub use decode::decode_model;
pub use encode::{add_diamond_clauses, encode_phi, CnfInstance};
pub use registry::{ScdRole, VarRef, VariableRegistry};
pub use search::{search_loop, SearchOutcome};
pub use solver::{solve, SolveOutcome, SolverBackend};

use crate::constructions::{gks_scd, jordan_scd, NecklaceScd};
use crate::error::{Error, Result};

/// What the searched family must satisfy after unrolling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    EdgeDisjoint,
    /// Pairwise almost-orthogonal; for odd `n` additionally good
    /// (unicyclic union of size-2 chains).
    AlmostOrthogonalGood,
}

/// Configuration of one search run. SCD indices are 0-based.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: u32,
    pub s: usize,
    pub mode: SearchMode,
    /// Decompositions pinned to constants.
    pub fixed: Vec<(usize, NecklaceScd)>,
    /// `(leader, follower)` pairs sharing variables through the
    /// complement bijection.
    pub coupled: Vec<(usize, usize)>,
    pub diamonds: bool,
    pub solver: SolverBackend,
    pub max_iterations: usize,
}

impl SearchConfig {
    /// A search with no pinned or coupled decompositions.
    pub fn new(n: u32, s: usize, mode: SearchMode) -> SearchConfig {
        SearchConfig {
            n,
            s,
            mode,
            fixed: Vec::new(),
            coupled: Vec::new(),
            diamonds: matches!(mode, SearchMode::AlmostOrthogonalGood),
            solver: SolverBackend::Internal,
            max_iterations: 10_000,
        }
    }

    /// The configuration that keeps the formula small: decomposition 0 is
    /// pinned to a known construction (block-code representatives for
    /// prime `n`, the trimmed maximal-unmatched-1s representatives
    /// otherwise), decomposition 1 to its complement, and the remaining
    /// decompositions are coupled in complement pairs.
    pub fn recommended(n: u32, s: usize, mode: SearchMode) -> Result<SearchConfig> {
        let mut cfg = SearchConfig::new(n, s, mode);
        if s == 0 {
            return Err(Error::Precondition("empty family requested".into()));
        }
        let base = if is_prime(n) {
            gks_scd(n)?
        } else {
            jordan_scd(n)?
        };
        cfg.fixed.push((0, base.clone()));
        if s >= 2 {
            cfg.fixed.push((1, base.complement()));
        }
        let mut i = 2;
        while i + 1 < s {
            cfg.coupled.push((i, i + 1));
            i += 2;
        }
        Ok(cfg)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}
