//! Chains and chain decompositions of the n-cube.

use crate::subset::Subset;
use std::fmt;

/// An ordered run of subsets, listed bottom-up. Saturation and symmetry
/// are properties checked by the verify module, not enforced by the type,
/// so that defective inputs remain representable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    pub n: u32,
    pub elements: Vec<Subset>,
}

impl Chain {
    pub fn new(n: u32, elements: Vec<Subset>) -> Self {
        Chain { n, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &Subset {
        self.elements.first().expect("chain is nonempty")
    }

    pub fn top(&self) -> &Subset {
        self.elements.last().expect("chain is nonempty")
    }

    /// Consecutive elements are one level apart with the lower contained
    /// in the upper.
    pub fn is_saturated(&self) -> bool {
        self.elements.windows(2).all(|w| w[0].covered_by(&w[1]))
    }

    /// Starts and ends in levels symmetric around the middle.
    pub fn is_symmetric(&self) -> bool {
        !self.is_empty() && self.bottom().level() + self.top().level() == self.n
    }

    /// The cover-relation edges contributed by this chain.
    pub fn edges(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.elements.windows(2).map(|w| (w[0], w[1]))
    }

    /// Elementwise complement, reversed so the result is increasing again.
    pub fn complement(&self) -> Chain {
        let mut elements: Vec<Subset> = self.elements.iter().map(|x| x.complement()).collect();
        elements.reverse();
        Chain {
            n: self.n,
            elements,
        }
    }

    /// Apply the cyclic rotation to every element.
    pub fn rotate(&self, k: i64) -> Chain {
        Chain {
            n: self.n,
            elements: self.elements.iter().map(|x| x.rotate(k)).collect(),
        }
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", strings.join(" "))
    }
}

/// Which poset a decomposition lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Cube,
    Necklace,
}

/// A set of chains intended to partition the n-cube (or, via necklace
/// representatives, the necklace poset).
#[derive(Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub n: u32,
    pub kind: Kind,
    pub chains: Vec<Chain>,
}

impl ChainDecomposition {
    pub fn new(n: u32, kind: Kind, chains: Vec<Chain>) -> Self {
        ChainDecomposition { n, kind, chains }
    }

    /// Complement every element of every chain; chain order is kept,
    /// each chain is reversed internally so it stays increasing.
    pub fn complement(&self) -> ChainDecomposition {
        ChainDecomposition {
            n: self.n,
            kind: self.kind,
            chains: self.chains.iter().map(|c| c.complement()).collect(),
        }
    }

    /// Total number of cover edges over all chains.
    pub fn edge_count(&self) -> usize {
        self.chains.iter().map(|c| c.len().saturating_sub(1)).sum()
    }

    /// Deterministic order: decreasing size, then lexicographic bottom.
    pub fn sort_chains(&mut self) {
        self.chains
            .sort_by_key(|c| (usize::MAX - c.len(), c.bottom().lex_key()));
    }
}

impl fmt::Debug for ChainDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ChainDecomposition(n={}, {:?}, {} chains)",
            self.n,
            self.kind,
            self.chains.len()
        )?;
        for c in &self.chains {
            writeln!(f, "  {:?}", c)?;
        }
        Ok(())
    }
}
