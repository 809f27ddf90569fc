use std::collections::BTreeSet;

use crate::error::{QavError, Result};
use crate::freealg::{NCPoly, Word};
use crate::presentations::Presentation;

use super::basis::{RewriteBasis, RewriteRule};

/// Resource caps for completion. Exceeding any cap is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_rules: usize,
    pub max_pairs: usize,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_rules: 20_000, max_pairs: 2_000_000, max_terms: 200_000 }
    }
}

/// Statistics gathered during completion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub pairs_processed: usize,
    pub pairs_skipped_degree: usize,
    pub rules_added: usize,
    pub rules_retired: usize,
}

struct Completer {
    basis: RewriteBasis,
    // (overlap length, left rule, right rule, overlap size)
    pairs: BTreeSet<(usize, usize, usize, usize)>,
    max_degree: usize,
    budget: Budget,
    stats: CompletionStats,
}

fn contains(hay: &[u16], needle: &[u16]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

impl Completer {
    fn add_pairs(&mut self, i: usize, j: usize) {
        let a = self.basis.rules()[i].lhs.letters();
        let b = self.basis.rules()[j].lhs.letters();
        for k in 1..a.len().min(b.len()) {
            if a[a.len() - k..] == b[..k] {
                let len = a.len() + b.len() - k;
                if len <= self.max_degree {
                    self.pairs.insert((len, i, j, k));
                } else {
                    self.stats.pairs_skipped_degree += 1;
                }
            }
        }
    }

    fn add_poly(&mut self, p: NCPoly) -> Result<()> {
        let mut stack = vec![p];
        while let Some(p) = stack.pop() {
            let r = self.basis.reduce(&p);
            if r.is_zero() {
                continue;
            }
            if r.len() > self.budget.max_terms {
                return Err(QavError::BudgetExceeded(format!(
                    "polynomial with {} terms exceeds max_terms {}",
                    r.len(),
                    self.budget.max_terms
                )));
            }
            let rule = RewriteRule::from_poly(&r, &self.basis.order).expect("nonzero");
            let retire: Vec<usize> = self
                .basis
                .active_indices()
                .into_iter()
                .filter(|&i| contains(self.basis.rules()[i].lhs.letters(), rule.lhs.letters()))
                .collect();
            let idx = self.basis.push_rule(rule);
            self.stats.rules_added += 1;
            if self.basis.active_indices().len() > self.budget.max_rules {
                return Err(QavError::BudgetExceeded(format!("more than {} rules", self.budget.max_rules)));
            }
            for i in retire {
                let poly = self.basis.rules()[i].as_poly();
                self.basis.remove_rule(i);
                self.stats.rules_retired += 1;
                stack.push(poly);
            }
            for j in self.basis.active_indices() {
                self.add_pairs(idx, j);
                if j != idx {
                    self.add_pairs(j, idx);
                }
            }
        }
        Ok(())
    }

    fn s_poly(&self, i: usize, j: usize, k: usize) -> NCPoly {
        let ri = &self.basis.rules()[i];
        let rj = &self.basis.rules()[j];
        let a = ri.lhs.letters();
        let b = rj.lhs.letters();
        let suffix = NCPoly::word(Word::from_slice(&b[k..]));
        let prefix = NCPoly::word(Word::from_slice(&a[..a.len() - k]));
        prefix.mul(&rj.rhs).sub(&ri.rhs.mul(&suffix))
    }

    fn run(&mut self) -> Result<()> {
        while let Some((_, i, j, k)) = self.pairs.pop_first() {
            if !self.basis.is_active(i) || !self.basis.is_active(j) {
                continue;
            }
            self.stats.pairs_processed += 1;
            if self.stats.pairs_processed > self.budget.max_pairs {
                return Err(QavError::BudgetExceeded(format!("more than {} critical pairs", self.budget.max_pairs)));
            }
            let s = self.s_poly(i, j, k);
            self.add_poly(s)?;
        }
        Ok(())
    }
}

/// Degree-truncated noncommutative completion: every overlap ambiguity of
/// length at most `max_degree` is resolved. Deterministic for a given
/// presentation and degree.
pub fn complete(pres: &Presentation, max_degree: usize) -> Result<RewriteBasis> {
    complete_with(pres, max_degree, Budget::default()).map(|(b, _)| b)
}

pub fn complete_with(pres: &Presentation, max_degree: usize, budget: Budget) -> Result<(RewriteBasis, CompletionStats)> {
    let mut c = Completer {
        basis: RewriteBasis::empty(pres.alphabet.clone(), pres.order.clone()),
        pairs: BTreeSet::new(),
        max_degree,
        budget,
        stats: CompletionStats::default(),
    };
    for rel in pres.relations_with_inverse_pairs() {
        c.add_poly(rel)?;
    }
    c.run()?;
    let mut basis = c.basis;
    for i in basis.active_indices() {
        let rhs = basis.reduce(&basis.rules()[i].rhs);
        basis.rule_mut(i).rhs = rhs;
    }
    basis.compact();
    basis.completion_degree = max_degree;
    basis.presentation_hash = pres.hash();
    Ok((basis, c.stats))
}
