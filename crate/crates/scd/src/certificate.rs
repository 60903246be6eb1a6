//! The certificate file format: a plain-text, diffable encoding of one
//! or more chain decompositions.
//!
//! ```text
//! # n=5
//! # kind=cube
//! SCD 1
//! 00000 10000 11000 11100 11110 11111
//! 01000 01100 01110
//! ...
//! SCD 2
//! ...
//! ```
//!
//! Subsets are encoded by their characteristic bitstrings with string
//! position 1 = element 1; each line is one chain, bottom-up.

use crate::chain::{Chain, ChainDecomposition, Kind};
use crate::constructions::NecklaceScd;
use crate::error::{Error, Result};
use crate::subset::Subset;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub n: u32,
    pub kind: Kind,
    pub decompositions: Vec<Vec<Vec<Subset>>>,
}

impl CertificateFile {
    pub fn from_cube(decompositions: &[ChainDecomposition]) -> Result<CertificateFile> {
        let n = decompositions
            .first()
            .ok_or_else(|| Error::Precondition("no decompositions to write".into()))?
            .n;
        for d in decompositions {
            if d.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: d.n,
                });
            }
        }
        Ok(CertificateFile {
            n,
            kind: Kind::Cube,
            decompositions: decompositions
                .iter()
                .map(|d| d.chains.iter().map(|c| c.elements.clone()).collect())
                .collect(),
        })
    }

    pub fn from_necklace(scds: &[NecklaceScd]) -> Result<CertificateFile> {
        let n = scds
            .first()
            .ok_or_else(|| Error::Precondition("no decompositions to write".into()))?
            .n;
        for scd in scds {
            if scd.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: scd.n,
                });
            }
        }
        Ok(CertificateFile {
            n,
            kind: Kind::Necklace,
            decompositions: scds.iter().map(|s| s.chains.clone()).collect(),
        })
    }

    pub fn cube_decompositions(&self) -> Result<Vec<ChainDecomposition>> {
        if self.kind != Kind::Cube {
            return Err(Error::Precondition(
                "certificate holds necklace chains".into(),
            ));
        }
        Ok(self
            .decompositions
            .iter()
            .map(|chains| {
                ChainDecomposition::new(
                    self.n,
                    Kind::Cube,
                    chains
                        .iter()
                        .map(|c| Chain::new(self.n, c.clone()))
                        .collect(),
                )
            })
            .collect())
    }

    pub fn necklace_scds(&self) -> Result<Vec<NecklaceScd>> {
        if self.kind != Kind::Necklace {
            return Err(Error::Precondition("certificate holds cube chains".into()));
        }
        Ok(self
            .decompositions
            .iter()
            .map(|chains| NecklaceScd {
                n: self.n,
                chains: chains.clone(),
            })
            .collect())
    }

    /// Parse the canonical layout. Extra `#` comment lines and blank
    /// lines are tolerated; everything else is an error with its line
    /// number.
    pub fn parse(text: &str) -> Result<CertificateFile> {
        let mut n: Option<u32> = None;
        let mut kind: Option<Kind> = None;
        let mut decompositions: Vec<Vec<Vec<Subset>>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(value) = rest.strip_prefix("n=") {
                    let parsed: u32 = value.trim().parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid dimension {value:?}"),
                    })?;
                    n = Some(parsed);
                } else if let Some(value) = rest.strip_prefix("kind=") {
                    kind = Some(match value.trim() {
                        "cube" => Kind::Cube,
                        "necklace" => Kind::Necklace,
                        other => {
                            return Err(Error::Parse {
                                line,
                                msg: format!("unknown kind {other:?}"),
                            })
                        }
                    });
                }
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("SCD") {
                let index: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid decomposition header {trimmed:?}"),
                })?;
                if index != decompositions.len() + 1 {
                    return Err(Error::Parse {
                        line,
                        msg: format!(
                            "decomposition {} out of order (expected {})",
                            index,
                            decompositions.len() + 1
                        ),
                    });
                }
                decompositions.push(Vec::new());
                continue;
            }
            let n = n.ok_or(Error::Parse {
                line,
                msg: "chain before '# n=' header".into(),
            })?;
            let current = decompositions.last_mut().ok_or(Error::Parse {
                line,
                msg: "chain before any 'SCD' header".into(),
            })?;
            let mut chain: Vec<Subset> = Vec::new();
            for token in trimmed.split_whitespace() {
                if token.len() as u32 != n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("bitstring {token:?} does not have length {n}"),
                    });
                }
                let x: Subset = token.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid bitstring {token:?}"),
                })?;
                if let Some(prev) = chain.last() {
                    if x.level() <= prev.level() {
                        return Err(Error::Parse {
                            line,
                            msg: format!("levels not increasing at {token:?}"),
                        });
                    }
                }
                chain.push(x);
            }
            current.push(chain);
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing '# n=' header".into(),
        })?;
        let kind = kind.ok_or(Error::Parse {
            line: 0,
            msg: "missing '# kind=' header".into(),
        })?;
        if decompositions.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no decompositions".into(),
            });
        }
        Ok(CertificateFile {
            n,
            kind,
            decompositions,
        })
    }
}

impl fmt::Display for CertificateFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# n={}", self.n)?;
        writeln!(
            f,
            "# kind={}",
            match self.kind {
                Kind::Cube => "cube",
                Kind::Necklace => "necklace",
            }
        )?;
        for (i, chains) in self.decompositions.iter().enumerate() {
            writeln!(f, "SCD {}", i + 1)?;
            for chain in chains {
                let words: Vec<String> = chain.iter().map(|x| x.to_string()).collect();
                writeln!(f, "{}", words.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gks_scd, jordan_scd};
    use crate::matching::standard_scd;
    use crate::unroll::unroll_scd;

    #[test]
    fn round_trip_is_identity_on_canonical_files() {
        let d = standard_scd(5);
        let c = d.complement();
        let file = CertificateFile::from_cube(&[d, c]).unwrap();
        let text = file.to_string();
        let parsed = CertificateFile::parse(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn necklace_round_trip() {
        for scd in [gks_scd(7).unwrap(), jordan_scd(6).unwrap()] {
            let file = CertificateFile::from_necklace(std::slice::from_ref(&scd)).unwrap();
            let parsed = CertificateFile::parse(&file.to_string()).unwrap();
            assert_eq!(parsed.necklace_scds().unwrap()[0], scd);
        }
    }

    #[test]
    fn unrolled_certificates_round_trip() {
        let d = unroll_scd(&jordan_scd(6).unwrap()).unwrap();
        let file = CertificateFile::from_cube(std::slice::from_ref(&d)).unwrap();
        let parsed = CertificateFile::parse(&file.to_string()).unwrap();
        assert_eq!(parsed.cube_decompositions().unwrap()[0], d);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_bits = "# n=3\n# kind=cube\nSCD 1\n010 01\n";
        match CertificateFile::parse(bad_bits) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_order = "# n=3\n# kind=cube\nSCD 2\n";
        assert!(matches!(
            CertificateFile::parse(bad_order),
            Err(Error::Parse { line: 3, .. })
        ));
        let bad_levels = "# n=3\n# kind=cube\nSCD 1\n110 100\n";
        assert!(matches!(
            CertificateFile::parse(bad_levels),
            Err(Error::Parse { line: 4, .. })
        ));
        let missing_header = "SCD 1\n010\n";
        assert!(matches!(
            CertificateFile::parse(missing_header),
            Err(Error::Parse { .. })
        ));
    }
}
