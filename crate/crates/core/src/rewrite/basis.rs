use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::freealg::{Alphabet, GenId, NCPoly, Word};
use crate::scalars::QRat;

use super::order::{MonomialOrder, OrderKey};

/// `lhs -> rhs`, meaning `lhs - rhs` lies in the ideal. Every word of `rhs`
/// is smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl RewriteRule {
    /// The ideal element `lhs - rhs`.
    pub fn as_poly(&self) -> NCPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), &QRat::one());
        p
    }

    /// Orients a nonzero polynomial by its leading word; the leading
    /// coefficient is normalized to 1.
    pub fn from_poly(p: &NCPoly, order: &MonomialOrder) -> Option<RewriteRule> {
        let (lead, c) = p.terms().max_by(|a, b| order.cmp(a.0, b.0))?;
        let lead = lead.clone();
        let inv = -c.inv();
        let mut rhs = NCPoly::zero();
        for (w, d) in p.terms() {
            if *w != lead {
                rhs.add_term(w.clone(), &(d * &inv));
            }
        }
        Some(RewriteRule { lhs: lead, rhs })
    }
}

/// Outcome of an ideal-membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// Nonzero normal form and the element's degree is within the
    /// completion degree.
    NotMemberUpTo(usize),
    /// Nonzero normal form, but the element's degree exceeds the completion
    /// degree, so the basis may be missing the rule that kills it.
    Inconclusive { degree: usize, completion_degree: usize },
}

/// A degree-truncated rewriting basis for a presented algebra.
#[derive(Clone, Debug)]
pub struct RewriteBasis {
    pub alphabet: Arc<Alphabet>,
    pub order: MonomialOrder,
    rules: Vec<RewriteRule>,
    lookup: HashMap<Vec<GenId>, usize>,
    lhs_lens: Vec<usize>,
    pub completion_degree: usize,
    pub presentation_hash: String,
}

impl RewriteBasis {
    pub fn new(
        alphabet: Arc<Alphabet>,
        order: MonomialOrder,
        rules: Vec<RewriteRule>,
        completion_degree: usize,
        presentation_hash: String,
    ) -> Self {
        let mut b = RewriteBasis {
            alphabet,
            order,
            rules: Vec::new(),
            lookup: HashMap::new(),
            lhs_lens: Vec::new(),
            completion_degree,
            presentation_hash,
        };
        for r in rules {
            b.push_rule(r);
        }
        b
    }

    pub(crate) fn empty(alphabet: Arc<Alphabet>, order: MonomialOrder) -> Self {
        RewriteBasis::new(alphabet, order, Vec::new(), 0, String::new())
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub(crate) fn push_rule(&mut self, r: RewriteRule) -> usize {
        let idx = self.rules.len();
        let l = r.lhs.len();
        self.lookup.insert(r.lhs.letters().to_vec(), idx);
        if let Err(pos) = self.lhs_lens.binary_search(&l) {
            self.lhs_lens.insert(pos, l);
        }
        self.rules.push(r);
        idx
    }

    pub(crate) fn remove_rule(&mut self, idx: usize) {
        let key = self.rules[idx].lhs.letters().to_vec();
        if self.lookup.get(&key) == Some(&idx) {
            self.lookup.remove(&key);
        }
    }

    pub(crate) fn rule_mut(&mut self, idx: usize) -> &mut RewriteRule {
        &mut self.rules[idx]
    }

    pub(crate) fn is_active(&self, idx: usize) -> bool {
        self.lookup.get(self.rules[idx].lhs.letters()) == Some(&idx)
    }

    pub(crate) fn active_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.lookup.values().copied().collect();
        v.sort_unstable();
        v
    }

    /// Drops retired rules and sorts the survivors by lhs.
    pub(crate) fn compact(&mut self) {
        let mut live: Vec<RewriteRule> = self.active_indices().into_iter().map(|i| self.rules[i].clone()).collect();
        live.sort_by(|a, b| self.order.cmp(&a.lhs, &b.lhs));
        self.rules.clear();
        self.lookup.clear();
        self.lhs_lens.clear();
        for r in live {
            self.push_rule(r);
        }
    }

    /// Leftmost, then shortest, rule lhs occurring in `w`.
    pub fn find_match(&self, w: &[GenId]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &l in &self.lhs_lens {
                if start + l > w.len() {
                    break;
                }
                if let Some(&idx) = self.lookup.get(&w[start..start + l]) {
                    return Some((start, idx));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_match(w.letters()).is_some()
    }

    /// Normal form of `p`: no word of the result contains a rule lhs.
    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        let mut work: BTreeMap<OrderKey, QRat> = BTreeMap::new();
        for (w, c) in p.terms() {
            work.insert(self.order.key(w.clone()), c.clone());
        }
        self.reduce_work(work)
    }

    pub(crate) fn reduce_work(&self, mut work: BTreeMap<OrderKey, QRat>) -> NCPoly {
        let mut out: Vec<(Word, QRat)> = Vec::new();
        while let Some((key, c)) = work.pop_last() {
            let w = key.word;
            match self.find_match(w.letters()) {
                None => out.push((w, c)),
                Some((start, idx)) => {
                    let rule = &self.rules[idx];
                    let end = start + rule.lhs.len();
                    for (rw, rc) in rule.rhs.terms() {
                        let mut nw = Word::from_slice(&w.letters()[..start]);
                        nw.0.extend_from_slice(rw.letters());
                        nw.0.extend_from_slice(&w.letters()[end..]);
                        let k = self.order.key(nw);
                        let add = &c * rc;
                        match work.entry(k) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(add);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                let s = o.get() + &add;
                                if s.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = s;
                                }
                            }
                        }
                    }
                }
            }
        }
        NCPoly::from_terms(out)
    }

    /// `reduce(a * b)` without materializing the full product first when
    /// both factors are already in normal form.
    pub fn mul_reduced(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut work: BTreeMap<OrderKey, QRat> = BTreeMap::new();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                let k = self.order.key(u.concat(v));
                let add = x * y;
                match work.entry(k) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(add);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get() + &add;
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        self.reduce_work(work)
    }

    /// Reduced product of a sequence of factors, folding left to right.
    pub fn product(&self, factors: &[&NCPoly]) -> NCPoly {
        let mut acc = NCPoly::one();
        for f in factors {
            acc = self.mul_reduced(&acc, f);
        }
        acc
    }

    pub fn is_member(&self, p: &NCPoly) -> Membership {
        let nf = self.reduce(p);
        if nf.is_zero() {
            Membership::Member
        } else if p.degree() <= self.completion_degree {
            Membership::NotMemberUpTo(self.completion_degree)
        } else {
            Membership::Inconclusive { degree: p.degree(), completion_degree: self.completion_degree }
        }
    }
}
