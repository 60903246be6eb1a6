//! Subsets of `[n] = {1, ..., n}` as fixed-length bitstrings.
//!
//! A subset is written as the characteristic bitstring `x_1 x_2 ... x_n`
//! with `x_i = 1` iff element `i` is in the subset. Element `i` is stored
//! at bit `i - 1` of a machine word, so string position 1 is the least
//! significant bit. Cyclic rotation renames elements `1 → 2 → ... → n → 1`.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

pub const MAX_DIMENSION: u32 = 32;

/// A subset of `[n]`, `1 <= n <= 32`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    n: u8,
    word: u32,
}

impl Subset {
    /// The empty subset of `[n]`.
    pub fn empty(n: u32) -> Self {
        assert!((1..=MAX_DIMENSION).contains(&n), "dimension out of range");
        Subset {
            n: n as u8,
            word: 0,
        }
    }

    /// The full subset `[n]`.
    pub fn full(n: u32) -> Self {
        let mut s = Self::empty(n);
        s.word = mask(n);
        s
    }

    /// Build from a machine word whose bit `i-1` encodes element `i`.
    pub fn from_word(n: u32, word: u32) -> Self {
        let mut s = Self::empty(n);
        assert_eq!(word & !mask(n), 0, "bits outside 1..=n set");
        s.word = word;
        s
    }

    /// Build from an iterator of elements of `[n]`.
    pub fn from_elements<I: IntoIterator<Item = u32>>(n: u32, elements: I) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            assert!((1..=n).contains(&e), "element out of range");
            s.word |= 1 << (e - 1);
        }
        s
    }

    pub fn n(&self) -> u32 {
        self.n as u32
    }

    pub fn word(&self) -> u32 {
        self.word
    }

    /// Number of elements, i.e. the level of the subset in the n-cube.
    pub fn level(&self) -> u32 {
        self.word.count_ones()
    }

    pub fn contains(&self, element: u32) -> bool {
        (1..=self.n()).contains(&element) && self.word >> (element - 1) & 1 == 1
    }

    /// The subset with `element` added.
    pub fn with(&self, element: u32) -> Self {
        assert!((1..=self.n()).contains(&element));
        Subset {
            n: self.n,
            word: self.word | 1 << (element - 1),
        }
    }

    /// The subset with `element` removed.
    pub fn without(&self, element: u32) -> Self {
        assert!((1..=self.n()).contains(&element));
        Subset {
            n: self.n,
            word: self.word & !(1 << (element - 1)),
        }
    }

    /// Iterate over the elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.n();
        let word = self.word;
        (1..=n).filter(move |i| word >> (i - 1) & 1 == 1)
    }

    /// Cyclic rotation renaming every element `i` to `i + k` (mod n, with
    /// representatives `1..=n`). Negative `k` rotates the other way;
    /// `rotate(n)` is the identity.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.n() as i64;
        let r = k.rem_euclid(n) as u32;
        if r == 0 {
            return *self;
        }
        let n = self.n();
        let m = mask(n);
        let word = ((self.word << r) | (self.word >> (n - r))) & m;
        Subset { n: self.n, word }
    }

    /// Complement with respect to the full set `[n]`.
    pub fn complement(&self) -> Self {
        Subset {
            n: self.n,
            word: !self.word & mask(self.n()),
        }
    }

    /// Whether `other` covers `self` in the n-cube (`self ⊂ other`, one
    /// level apart).
    pub fn covered_by(&self, other: &Subset) -> bool {
        self.n == other.n
            && self.word & other.word == self.word
            && (self.word ^ other.word).count_ones() == 1
    }

    /// Key whose numeric order equals lexicographic order of the
    /// bitstrings `x_1 x_2 ... x_n`.
    pub fn lex_key(&self) -> u32 {
        self.word.reverse_bits() >> (32 - self.n())
    }

    /// Lexicographically smallest bitstring among all rotations.
    pub fn canonical_rotation(&self) -> Subset {
        let mut best = *self;
        let mut best_key = self.lex_key();
        for k in 1..self.n() as i64 {
            let cand = self.rotate(k);
            let key = cand.lex_key();
            if key < best_key {
                best = cand;
                best_key = key;
            }
        }
        best
    }

    /// Size of the rotation orbit; always divides `n`.
    pub fn orbit_size(&self) -> u32 {
        for k in 1..=self.n() as i64 {
            if self.rotate(k) == *self {
                return k as u32;
            }
        }
        unreachable!("rotate(n) is the identity")
    }
}

fn mask(n: u32) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1 << n) - 1
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n() {
            f.write_str(if self.contains(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.len() as u32;
        if !(1..=MAX_DIMENSION).contains(&n) {
            return Err(Error::Dimension(n));
        }
        let mut word = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => word |= 1 << i,
                '0' => {}
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid bitstring character {c:?}"),
                    })
                }
            }
        }
        Ok(Subset { n: n as u8, word })
    }
}
