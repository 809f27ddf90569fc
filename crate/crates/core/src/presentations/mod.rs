//! Presented algebras: the sign-twisted quantum affine `sl2` in Chevalley
//! generators, its tensor square, and the windowed Drinfeld mode algebra.

mod drinfeld;
mod uq;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::freealg::{Alphabet, Generator, NCPoly, Word};
use crate::rewrite::{poly_to_json, sha256_hex, MonomialOrder, TermJson};
use crate::scalars::QRat;

pub use drinfeld::{build_drinfeld, DrinfeldLetters, ModeWindow};
pub use uq::{build_uq, build_uq_tensor_square, root_weight, UqLetters, CARTAN};

/// Generators, relations and a monomial order.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Arc<Alphabet>,
    pub relations: Vec<NCPoly>,
    /// One label per relation, e.g. `A2 k1 e1`.
    pub labels: Vec<String>,
    pub order: MonomialOrder,
    /// Notes produced while building (e.g. a window too small for some
    /// relation family).
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct PresentationFile {
    pub name: String,
    pub alphabet: Vec<Generator>,
    pub order: MonomialOrder,
    pub relations: Vec<LabeledRelation>,
    pub presentation_hash: String,
}

#[derive(Serialize, Deserialize)]
pub struct LabeledRelation {
    pub label: String,
    pub terms: Vec<TermJson>,
}

impl Presentation {
    pub(crate) fn new(name: &str, alphabet: Arc<Alphabet>, order: MonomialOrder) -> Self {
        Presentation {
            name: name.to_string(),
            alphabet,
            relations: Vec::new(),
            labels: Vec::new(),
            order,
            warnings: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, label: impl Into<String>, rel: NCPoly) {
        assert!(!rel.is_zero(), "zero relation");
        self.labels.push(label.into());
        self.relations.push(rel);
    }

    /// A presentation from labeled relations under the deglex order of the
    /// alphabet's declaration order.
    pub fn from_relations(name: &str, alphabet: Alphabet, relations: Vec<(String, NCPoly)>) -> Self {
        let order = MonomialOrder::deglex(&alphabet);
        let mut p = Presentation::new(name, Arc::new(alphabet), order);
        for (l, r) in relations {
            p.push(l, r);
        }
        p
    }

    pub fn gen(&self, name: &str) -> NCPoly {
        NCPoly::gen(self.alphabet.id(name).unwrap_or_else(|| panic!("no generator {name}")))
    }

    /// Relations plus `a a^-1 - 1` and `a^-1 a - 1` for every declared
    /// inverse pair.
    pub fn relations_with_inverse_pairs(&self) -> Vec<NCPoly> {
        let mut rels = self.relations.clone();
        for (a, b) in self.alphabet.inverse_pairs() {
            rels.push(NCPoly::monomial(&[a, b]).sub(&NCPoly::one()));
            rels.push(NCPoly::monomial(&[b, a]).sub(&NCPoly::one()));
        }
        rels
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().map(NCPoly::degree).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> PresentationFile {
        let relations = self
            .relations
            .iter()
            .zip(&self.labels)
            .map(|(r, l)| LabeledRelation { label: l.clone(), terms: poly_to_json(r, &self.alphabet) })
            .collect();
        PresentationFile {
            name: self.name.clone(),
            alphabet: self.alphabet.generators().to_vec(),
            order: self.order.clone(),
            relations,
            presentation_hash: self.hash(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    /// sha256 of the canonical JSON encoding (name, alphabet, order,
    /// relations).
    pub fn hash(&self) -> String {
        #[derive(Serialize)]
        struct Canon<'a> {
            name: &'a str,
            alphabet: &'a [Generator],
            order: &'a MonomialOrder,
            relations: Vec<Vec<TermJson>>,
        }
        let c = Canon {
            name: &self.name,
            alphabet: self.alphabet.generators(),
            order: &self.order,
            relations: self.relations.iter().map(|r| poly_to_json(r, &self.alphabet)).collect(),
        };
        sha256_hex(&serde_json::to_vec(&c).expect("serializable"))
    }

    /// True when every relation only mentions letters for which `keep`
    /// holds.
    pub fn relations_use_only(&self, keep: impl Fn(&str) -> bool) -> bool {
        self.relations
            .iter()
            .all(|r| r.letters_used().all(|g| keep(self.alphabet.name(g))))
    }
}

/// `sum_i c_i * w_i` helper used by the builders.
pub(crate) fn lin(terms: &[(QRat, &[u16])]) -> NCPoly {
    NCPoly::from_terms(terms.iter().map(|(c, w)| (Word::from_slice(w), c.clone())))
}
