//! Versioned JSON persistence for rewriting bases (and the relation lists of
//! presentations, which share the term encoding).

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{QavError, Result};
use crate::freealg::{Alphabet, Generator, NCPoly, Word};
use crate::scalars::{Poly, QRat};

use super::basis::{RewriteBasis, RewriteRule};
use super::order::MonomialOrder;

pub const BASIS_FILE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl From<&QRat> for CoeffJson {
    fn from(c: &QRat) -> Self {
        let f = |p: &Poly| p.coeffs().iter().map(|x| x.to_string()).collect();
        CoeffJson { num: f(c.numer()), den: f(c.denom()) }
    }
}

impl CoeffJson {
    pub fn to_qrat(&self) -> Result<QRat> {
        let parse = |v: &[String]| -> Result<Poly> {
            v.iter()
                .map(|s| {
                    s.parse::<BigInt>()
                        .map_err(|e| QavError::Parse { pos: 0, msg: format!("bad integer `{s}`: {e}") })
                })
                .collect::<Result<Vec<_>>>()
                .map(Poly::from_coeffs)
        };
        let den = parse(&self.den)?;
        if den.is_zero() {
            return Err(QavError::Parse { pos: 0, msg: "zero denominator".into() });
        }
        Ok(QRat::new(parse(&self.num)?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub word: Vec<String>,
}

pub fn poly_to_json(p: &NCPoly, alpha: &Alphabet) -> Vec<TermJson> {
    p.terms()
        .rev()
        .map(|(w, c)| TermJson {
            coeff: c.into(),
            word: w.letters().iter().map(|&g| alpha.name(g).to_string()).collect(),
        })
        .collect()
}

pub fn poly_from_json(terms: &[TermJson], alpha: &Alphabet) -> Result<NCPoly> {
    let mut p = NCPoly::zero();
    for t in terms {
        let w = t.word.iter().map(|n| alpha.get(n)).collect::<Result<Vec<_>>>()?;
        p.add_term(Word::from_slice(&w), &t.coeff.to_qrat()?);
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: Vec<String>,
    pub rhs: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    pub version: u32,
    pub order: MonomialOrder,
    pub alphabet: Vec<Generator>,
    pub completion_degree: usize,
    pub presentation_hash: String,
    pub rules: Vec<RuleJson>,
    /// sha256 of this document serialized with `basis_hash` empty.
    pub basis_hash: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl BasisFile {
    pub fn from_basis(b: &RewriteBasis) -> Self {
        let alpha = &b.alphabet;
        let rules = b
            .rules()
            .iter()
            .map(|r| RuleJson {
                lhs: r.lhs.letters().iter().map(|&g| alpha.name(g).to_string()).collect(),
                rhs: poly_to_json(&r.rhs, alpha),
            })
            .collect();
        let mut f = BasisFile {
            version: BASIS_FILE_VERSION,
            order: b.order.clone(),
            alphabet: alpha.generators().to_vec(),
            completion_degree: b.completion_degree,
            presentation_hash: b.presentation_hash.clone(),
            rules,
            basis_hash: String::new(),
        };
        f.basis_hash = f.compute_hash();
        f
    }

    fn compute_hash(&self) -> String {
        let mut copy = self.clone();
        copy.basis_hash.clear();
        sha256_hex(&serde_json::to_vec(&copy).expect("serializable"))
    }

    pub fn to_basis(&self) -> Result<RewriteBasis> {
        if self.version != BASIS_FILE_VERSION {
            return Err(QavError::Version(self.version));
        }
        let computed = self.compute_hash();
        if computed != self.basis_hash {
            return Err(QavError::HashMismatch { stored: self.basis_hash.clone(), computed });
        }
        let mut alpha = Alphabet::from_generators(self.alphabet.clone());
        alpha.rebuild_index();
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let lhs = r.lhs.iter().map(|n| alpha.get(n)).collect::<Result<Vec<_>>>()?;
                Ok(RewriteRule { lhs: Word::from_slice(&lhs), rhs: poly_from_json(&r.rhs, &alpha)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RewriteBasis::new(
            Arc::new(alpha),
            self.order.clone(),
            rules,
            self.completion_degree,
            self.presentation_hash.clone(),
        ))
    }
}

impl RewriteBasis {
    /// Hash of the canonical JSON form; stable across runs.
    pub fn hash(&self) -> String {
        BasisFile::from_basis(self).basis_hash
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&BasisFile::from_basis(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<RewriteBasis> {
        let f: BasisFile = serde_json::from_str(s)?;
        f.to_basis()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<RewriteBasis> {
        RewriteBasis::from_json(&std::fs::read_to_string(path)?)
    }
}
