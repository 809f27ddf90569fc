//! Free associative algebra over `Q(q)` on a declared alphabet: generators,
//! words, noncommutative polynomials, and the doubled alphabet used as the
//! target of the coproduct.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{QavError, Result};
use crate::scalars::{DenDisplay, NumDisplay, QRat};

pub type GenId = u16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    /// Id of the inverse letter, when the generator is one half of an
    /// inverse pair.
    pub inverse: Option<GenId>,
    /// Multiplicative weight used by weighted monomial orders (1 by default).
    pub weight: u32,
}

/// An ordered generator set. A generator's id is its precedence: smaller id,
/// smaller letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    gens: Vec<Generator>,
    #[serde(skip)]
    index: HashMap<String, GenId>,
}

impl Alphabet {
    /// Builds an alphabet from names listed in increasing precedence.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let gens = names
            .iter()
            .map(|n| Generator { name: n.as_ref().to_string(), inverse: None, weight: 1 })
            .collect();
        Alphabet::from_generators(gens)
    }

    pub fn from_generators(gens: Vec<Generator>) -> Self {
        let index = gens.iter().enumerate().map(|(i, g)| (g.name.clone(), i as GenId)).collect();
        let a = Alphabet { gens, index };
        assert_eq!(a.index.len(), a.gens.len(), "duplicate generator names");
        a
    }

    /// Declares `a` and `b` mutually inverse.
    pub fn with_inverse_pair(mut self, a: &str, b: &str) -> Self {
        let ia = self.id(a).expect("unknown generator in inverse pair");
        let ib = self.id(b).expect("unknown generator in inverse pair");
        self.gens[ia as usize].inverse = Some(ib);
        self.gens[ib as usize].inverse = Some(ia);
        self
    }

    pub fn with_weight(mut self, name: &str, w: u32) -> Self {
        let i = self.id(name).expect("unknown generator");
        self.gens[i as usize].weight = w;
        self
    }

    pub(crate) fn rebuild_index(&mut self) {
        self.index = self.gens.iter().enumerate().map(|(i, g)| (g.name.clone(), i as GenId)).collect();
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn get(&self, name: &str) -> Result<GenId> {
        self.id(name).ok_or_else(|| QavError::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id as usize].name
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        0..self.gens.len() as GenId
    }

    /// Inverse pairs `(a, a^-1)`, each listed once with the smaller id first.
    pub fn inverse_pairs(&self) -> Vec<(GenId, GenId)> {
        self.gens
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.inverse.map(|j| (i as GenId, j)))
            .filter(|(i, j)| i < j)
            .collect()
    }

    /// `A ⊔ A'`: every unprimed letter precedes every primed letter, so the
    /// cross-commutation rule `a'b -> ba'` is oriented left to right.
    pub fn doubled(&self) -> Alphabet {
        let n = self.gens.len() as GenId;
        let mut gens = self.gens.clone();
        for g in &self.gens {
            gens.push(Generator {
                name: format!("{}'", g.name),
                inverse: g.inverse.map(|i| i + n),
                weight: g.weight,
            });
        }
        Alphabet::from_generators(gens)
    }

    /// Display form of a letter; inverse letters named `<x>inv` print as
    /// `x^-1`.
    fn base_and_sign(&self, id: GenId) -> (&str, i64) {
        let g = &self.gens[id as usize];
        if let Some(inv) = g.inverse {
            let partner = &self.gens[inv as usize].name;
            if g.name.strip_suffix("inv").is_some_and(|b| b == partner)
                || (g.name.ends_with('\'') && g.name.trim_end_matches('\'').strip_suffix("inv").is_some())
            {
                return (partner.as_str(), -1);
            }
        }
        (g.name.as_str(), 1)
    }
}

/// A finite sequence of letters. Ordered degree-lexicographically by letter id.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub SmallVec<[GenId; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: GenId) -> Self {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn from_slice(s: &[GenId]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn display<'a>(&'a self, alpha: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alpha }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alpha: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        // collapse runs into powers
        let mut runs: Vec<(&str, i64)> = Vec::new();
        for &g in self.word.letters() {
            let (base, s) = self.alpha.base_and_sign(g);
            match runs.last_mut() {
                Some((b, e)) if *b == base && (*e > 0) == (s > 0) => *e += s,
                _ => runs.push((base, s)),
            }
        }
        for (i, (b, e)) in runs.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{b}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite `Q(q)`-linear combination of words with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, QRat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::scalar(QRat::one())
    }

    pub fn scalar(c: QRat) -> Self {
        NCPoly::term(c, Word::empty())
    }

    pub fn term(c: QRat, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(QRat::one(), w)
    }

    pub fn gen(g: GenId) -> Self {
        NCPoly::word(Word::letter(g))
    }

    /// Product of letters given as ids.
    pub fn monomial(letters: &[GenId]) -> Self {
        NCPoly::word(Word::from_slice(letters))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, QRat)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &QRat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, QRat> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> QRat {
        self.terms.get(w).cloned().unwrap_or_else(QRat::zero)
    }

    /// Largest word under the degree-lexicographic letter-id order.
    pub fn leading(&self) -> Option<(&Word, &QRat)> {
        self.terms.iter().next_back()
    }

    /// Maximum word length; 0 for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    /// `Some(c)` if this is a scalar multiple of the unit (including zero).
    pub fn as_scalar(&self) -> Option<QRat> {
        match self.terms.len() {
            0 => Some(QRat::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: &QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &NCPoly, c: &QRat) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(d * c));
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &QRat::one());
        r
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &-QRat::one());
        r
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-QRat::one())
    }

    pub fn scale(&self, c: &QRat) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect() }
    }

    /// Bilinear concatenation product.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut r = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                r.add_term(u.concat(v), &(a * b));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        (0..n).fold(NCPoly::one(), |acc, _| acc.mul(self))
    }

    /// Commutator `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&QRat) -> QRat) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Relabels letters; words with a letter mapped to `None` are dropped.
    pub fn relabel(&self, f: impl Fn(GenId) -> GenId) -> NCPoly {
        NCPoly::from_terms(
            self.terms.iter().map(|(w, c)| (Word(w.0.iter().map(|&g| f(g)).collect()), c.clone())),
        )
    }

    pub fn letters_used(&self) -> impl Iterator<Item = GenId> + '_ {
        self.terms.keys().flat_map(|w| w.0.iter().copied())
    }

    pub fn display<'a>(&'a self, alpha: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, alpha }
    }

    pub fn to_string_in(&self, alpha: &Alphabet) -> String {
        self.display(alpha).to_string()
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a NCPoly,
    alpha: &'a Alphabet,
}

type Laurent = (i64, Vec<num_bigint::BigInt>);

impl fmt::Display for PolyDisplay<'_> {
    /// Terms in decreasing word order; terms sharing a denominator are
    /// grouped as `(sum)/den` at the position of their largest word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut groups: Vec<(Laurent, Vec<(&Word, Laurent)>)> = Vec::new();
        for (w, c) in self.poly.terms.iter().rev() {
            let (num, den) = c.balanced();
            match groups.iter_mut().find(|(d, _)| *d == den) {
                Some((_, members)) => members.push((w, num)),
                None => groups.push((den, vec![(w, num)])),
            }
        }
        for (gi, (den, members)) in groups.iter().enumerate() {
            let unit_den = QRat::balanced_den_is_one(den);
            if unit_den {
                for (mi, (w, num)) in members.iter().enumerate() {
                    write_term(f, w, num, self.alpha, gi == 0 && mi == 0)?;
                }
            } else {
                if gi > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "(")?;
                for (mi, (w, num)) in members.iter().enumerate() {
                    write_term(f, w, num, self.alpha, mi == 0)?;
                }
                write!(f, ")/{}", DenDisplay(den.0, &den.1))?;
            }
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, w: &Word, num: &Laurent, alpha: &Alphabet, first: bool) -> fmt::Result {
    use num_traits::{One, Signed, Zero};
    let nonzero: Vec<_> = num.1.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let single = nonzero.len() == 1;
    let negative = single && nonzero[0].1.is_negative();
    if first {
        if negative {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if negative { "-" } else { "+" })?;
    }
    let wd = w.display(alpha);
    if single {
        let (i, c) = nonzero[0];
        let e = num.0 + i as i64;
        let mag = c.abs();
        let coeff = match (e, mag.is_one()) {
            (0, true) => String::new(),
            (0, false) => mag.to_string(),
            (1, true) => "q".into(),
            (_, true) => format!("q^{e}"),
            (1, false) => format!("{mag}*q"),
            (_, false) => format!("{mag}*q^{e}"),
        };
        match (coeff.is_empty(), w.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{wd}"),
            (false, true) => write!(f, "{coeff}"),
            (false, false) => write!(f, "{coeff}*{wd}"),
        }
    } else if w.is_empty() {
        write!(f, "({})", NumDisplay(num.0, &num.1))
    } else {
        write!(f, "({})*{wd}", NumDisplay(num.0, &num.1))
    }
}

/// An `NCPoly` tagged with its alphabet, for APIs that must reject mixing.
#[derive(Clone, Debug)]
pub struct Element {
    pub alphabet: Arc<Alphabet>,
    pub poly: NCPoly,
}

impl Element {
    pub fn new(alphabet: Arc<Alphabet>, poly: NCPoly) -> Self {
        Element { alphabet, poly }
    }

    fn check(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(QavError::AlphabetMismatch)
        }
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Element::new(self.alphabet.clone(), self.poly.mul(&other.poly)))
    }

    /// `self ⊗ other` in the doubled alphabet.
    pub fn tensor(&self, other: &Element) -> Result<TensorPoly> {
        self.check(other)?;
        Ok(TensorPoly::tensor(&self.poly, &other.poly, self.alphabet.len()))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.display(&self.alphabet).fmt(f)
    }
}

/// A polynomial over `A ⊔ A'` kept with every unprimed letter left of every
/// primed letter. `base` is `|A|`; letters `>= base` are primed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    pub base: usize,
    pub poly: NCPoly,
}

impl TensorPoly {
    /// `p ⊗ r`: `p` on unprimed letters, `r` shifted to primed letters.
    pub fn tensor(p: &NCPoly, r: &NCPoly, base: usize) -> TensorPoly {
        let shift = base as GenId;
        let r_primed = r.relabel(|g| g + shift);
        TensorPoly { base, poly: p.mul(&r_primed) }
    }

    pub fn unit(base: usize) -> TensorPoly {
        TensorPoly { base, poly: NCPoly::one() }
    }

    fn split(w: &Word, base: usize) -> (&[GenId], &[GenId]) {
        let cut = w.0.iter().position(|&g| g as usize >= base).unwrap_or(w.len());
        (&w.0[..cut], &w.0[cut..])
    }

    /// Moves every primed letter to the right of every unprimed letter.
    pub fn canonicalize(p: &NCPoly, base: usize) -> NCPoly {
        NCPoly::from_terms(p.terms().map(|(w, c)| {
            let (mut left, right): (SmallVec<[GenId; 16]>, SmallVec<[GenId; 16]>) =
                w.0.iter().copied().partition(|&g| (g as usize) < base);
            left.extend(right);
            (Word(left), c.clone())
        }))
    }

    /// `(u ⊗ v)(u' ⊗ v') = uu' ⊗ vv'`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        assert_eq!(self.base, other.base);
        let mut r = NCPoly::zero();
        for (w1, c1) in self.poly.terms() {
            let (u1, v1) = Self::split(w1, self.base);
            for (w2, c2) in other.poly.terms() {
                let (u2, v2) = Self::split(w2, self.base);
                let mut w: SmallVec<[GenId; 16]> = SmallVec::from_slice(u1);
                w.extend_from_slice(u2);
                w.extend_from_slice(v1);
                w.extend_from_slice(v2);
                r.add_term(Word(w), &(c1 * c2));
            }
        }
        TensorPoly { base: self.base, poly: r }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        TensorPoly { base: self.base, poly: self.poly.add(&other.poly) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QRat;

    fn uq_alpha() -> Alphabet {
        Alphabet::new(&["f2", "f1", "k2inv", "k2", "k1inv", "k1", "e1", "e2"])
            .with_inverse_pair("k1", "k1inv")
            .with_inverse_pair("k2", "k2inv")
    }

    #[test]
    fn word_order_is_deglex() {
        let a = Word::from_slice(&[7]);
        let b = Word::from_slice(&[0, 0]);
        let c = Word::from_slice(&[0, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn multiply_examples() {
        let al = uq_alpha();
        let e1 = NCPoly::gen(al.id("e1").unwrap());
        let e2 = NCPoly::gen(al.id("e2").unwrap());
        let f1 = NCPoly::gen(al.id("f1").unwrap());
        assert_eq!(e1.mul(&f1), NCPoly::monomial(&[6, 1]));
        assert_eq!(e1.add(&f1).mul(&NCPoly::one()), e1.add(&f1));
        let x = e1.mul(&e2).sub(&e2.mul(&e1).scale(&QRat::q_pow(-2)));
        let expect = e1.mul(&e2).mul(&e1).sub(&e2.mul(&e1).mul(&e1).scale(&QRat::q_pow(-2)));
        assert_eq!(x.mul(&e1), expect);
    }

    #[test]
    fn display_groups_denominators() {
        let al = uq_alpha();
        let k1 = NCPoly::gen(al.id("k1").unwrap());
        let k1i = NCPoly::gen(al.id("k1inv").unwrap());
        let f1e1 = NCPoly::monomial(&[1, 6]);
        let c = crate::scalars::q_minus_qinv().inv();
        let p = f1e1.add(&k1.sub(&k1i).scale(&c));
        assert_eq!(p.to_string_in(&al), "f1*e1 + (k1 - k1^-1)/(q - q^-1)");
    }

    #[test]
    fn display_powers_and_coefficients() {
        let al = uq_alpha();
        let p = NCPoly::term(QRat::laurent(-2, &[-1, 0, 1, 0, -1]), Word::from_slice(&[6, 6, 7, 6]));
        assert_eq!(p.to_string_in(&al), "(-q^2 + 1 - q^-2)*e1^2*e2*e1");
        let k = NCPoly::monomial(&[4, 4]).scale(&QRat::q_pow(2)).neg();
        assert_eq!(k.to_string_in(&al), "-q^2*k1^-2");
    }

    #[test]
    fn tensor_product_law() {
        let al = uq_alpha();
        let n = al.len();
        let e1 = NCPoly::gen(6);
        let f1 = NCPoly::gen(1);
        let k1 = NCPoly::gen(5);
        let lhs = TensorPoly::tensor(&e1, &f1, n).mul(&TensorPoly::tensor(&k1, &NCPoly::one(), n));
        assert_eq!(lhs, TensorPoly::tensor(&e1.mul(&k1), &f1, n));
        assert_eq!(TensorPoly::tensor(&NCPoly::one(), &NCPoly::one(), n), TensorPoly::unit(n));
    }

    #[test]
    fn element_rejects_mixed_alphabets() {
        let a = Arc::new(uq_alpha());
        let b = Arc::new(Alphabet::new(&["x", "y"]));
        let x = Element::new(a, NCPoly::gen(0));
        let y = Element::new(b, NCPoly::gen(0));
        assert!(matches!(x.multiply(&y), Err(QavError::AlphabetMismatch)));
    }
}
