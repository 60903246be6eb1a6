//! Symmetric chain decompositions of the n-cube and its necklace
//! quotient.
//!
//! The n-cube `Q_n` is the poset of all subsets of `{1, ..., n}` ordered
//! by inclusion. This crate constructs decompositions of `Q_n` into
//! symmetric saturated chains (SCDs), transfers them to and from the
//! necklace poset `N_n` (the quotient by cyclic rotation), verifies
//! orthogonality properties of families of decompositions, and searches
//! for such families with a SAT solver.
//!
//! The accompanying guide under `book/` walks through the concepts; its
//! code snippets are compiled and run as doctests of this crate (see the
//! [`guide`] module).

mod certificate;
mod chain;
mod constructions;
mod counting;
mod error;
mod matching;
mod necklace;
pub mod sat;
mod subset;
mod unroll;
mod verify;

pub use certificate::CertificateFile;
pub use chain::{Chain, ChainDecomposition, Kind};
pub use constructions::{
    gks_representatives, gks_scd, jordan_representatives, jordan_scd, NecklaceScd,
    RepresentativeSet, SelectionRule,
};
pub use counting::{binomial, chain_size_profile, count_table, CountTable};
pub use error::{Error, Result};
pub use matching::{
    block_code, chain_of, matching, predecessor, standard_scd, successor, BlockCode, Matching,
};
pub use necklace::{
    build_poset, necklace_chain_profile, necklace_count, necklace_level_sizes, necklace_of,
    Necklace, NecklacePoset, PosetEdge, ReducedNecklaceGraph,
};
pub use subset::{Subset, MAX_DIMENSION};
pub use unroll::{
    default_representatives, orbit_label, try_unroll_family, unroll_chain, unroll_scd,
    unroll_scd_with, ConflictPair, FamilyUnroll, OrbitLabel, RepresentativeChain, UnrollMode,
};
pub use verify::{
    check_almost_orthogonal, check_almost_orthogonal_with_cap, check_edge_disjoint,
    check_edge_disjoint_with_cap, check_good, check_orthogonal, check_orthogonal_with_cap,
    check_scd, check_scd_with_cap, check_unimodal, to_orthogonal, ComponentShape, GoodnessOutcome,
    VerificationReport, Witness, DEFAULT_WITNESS_CAP,
};

/// The guide from `book/`, one module per chapter. Including the
/// chapters here keeps their code blocks compiling and running as
/// doctests of this crate.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/standard-decomposition.md")]
    pub mod standard_decomposition {}
    #[doc = include_str!("../../../book/src/necklace-poset.md")]
    pub mod necklace_poset {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub mod constructions {}
    #[doc = include_str!("../../../book/src/unrolling.md")]
    pub mod unrolling {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/sat-search.md")]
    pub mod sat_search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
