use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::freealg::{Alphabet, Word};

/// Degree-lexicographic order on words. Letters compare by id (the
/// alphabet's precedence); words compare first by total letter weight, then
/// by length, then lexicographically. With all weights 1 this is plain
/// deglex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    weights: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    DegLex,
    WeightedDegLex,
}

impl MonomialOrder {
    pub fn deglex(alpha: &Alphabet) -> Self {
        MonomialOrder { kind: OrderKind::DegLex, weights: vec![1; alpha.len()] }
    }

    /// Uses the weights recorded on the alphabet's generators.
    pub fn weighted(alpha: &Alphabet) -> Self {
        MonomialOrder {
            kind: OrderKind::WeightedDegLex,
            weights: alpha.generators().iter().map(|g| g.weight).collect(),
        }
    }

    pub fn weight(&self, w: &Word) -> u32 {
        match self.kind {
            OrderKind::DegLex => w.len() as u32,
            OrderKind::WeightedDegLex => w.letters().iter().map(|&g| self.weights[g as usize]).sum(),
        }
    }

    pub fn key(&self, w: Word) -> OrderKey {
        OrderKey { weight: self.weight(&w), word: w }
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b))
    }
}

/// A word paired with its order weight; the derived ordering is the
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey {
    pub weight: u32,
    pub word: Word,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn words() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u16..4, 0..6).prop_map(|v| Word::from_slice(&v))
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(u in words(), v in words(), a in words(), b in words()) {
            let alpha = Alphabet::new(&["w", "x", "y", "z"]).with_weight("z", 3);
            for ord in [MonomialOrder::deglex(&alpha), MonomialOrder::weighted(&alpha)] {
                let c = ord.cmp(&u, &v);
                let lhs = a.concat(&u).concat(&b);
                let rhs = a.concat(&v).concat(&b);
                prop_assert_eq!(ord.cmp(&lhs, &rhs), c);
            }
        }
    }
}
