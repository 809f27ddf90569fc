//! Generator-image maps between presented algebras: homomorphisms,
//! anti-homomorphisms and `q -> q^-1` twisted maps, with application,
//! composition and relation-preservation checks.

mod braid_inverse;
mod drinfeld_maps;
mod uq_maps;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QavError, Result};
use crate::expr::parse_poly;
use crate::freealg::{Alphabet, GenId, NCPoly, Word};
use crate::presentations::Presentation;
use crate::rewrite::{Membership, RewriteBasis};
use crate::scalars::QRat;

pub use braid_inverse::{solve_braid_inverse, BraidInverse};
pub use drinfeld_maps::{psi, xi};
pub use uq_maps::{antipode, antipode_axiom_residuals, braid, coproduct, counit, omega, phi};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Hom,
    AntiHom,
}

/// What the map does to scalar coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffTwist {
    Identity,
    /// `q -> q^-1`
    Bar,
}

/// A map determined by the images of generators.
#[derive(Clone, Debug)]
pub struct GenImageMap {
    pub name: String,
    pub source_name: String,
    pub target_name: String,
    pub source: Arc<Alphabet>,
    pub target: Arc<Alphabet>,
    images: Vec<Option<NCPoly>>,
    pub kind: MapKind,
    pub twist: CoeffTwist,
}

/// Result of checking one source relation under a map.
#[derive(Clone, Debug)]
pub struct RelationImage {
    pub label: String,
    pub verdict: Membership,
    /// Normal form of the image; zero when the relation is respected.
    pub residual: NCPoly,
    pub degree: usize,
}

impl GenImageMap {
    pub fn new(name: &str, source: &Presentation, target: &Presentation, kind: MapKind, twist: CoeffTwist) -> Self {
        GenImageMap {
            name: name.to_string(),
            source_name: source.name.clone(),
            target_name: target.name.clone(),
            source: source.alphabet.clone(),
            target: target.alphabet.clone(),
            images: vec![None; source.alphabet.len()],
            kind,
            twist,
        }
    }

    pub fn set(&mut self, gen: &str, image: NCPoly) {
        let g = self.source.id(gen).unwrap_or_else(|| panic!("no generator {gen}"));
        self.images[g as usize] = Some(image);
    }

    /// Sets an image from expression text over the target alphabet.
    pub fn set_expr(&mut self, gen: &str, image: &str) -> Result<()> {
        let p = parse_poly(image, &self.target)?;
        self.source.get(gen)?;
        self.set(gen, p);
        Ok(())
    }

    pub fn image(&self, g: GenId) -> Result<&NCPoly> {
        self.images[g as usize]
            .as_ref()
            .ok_or_else(|| QavError::MissingImage(self.source.name(g).to_string()))
    }

    pub fn image_of(&self, gen: &str) -> Result<&NCPoly> {
        self.image(self.source.get(gen)?)
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    fn twist_coeff(&self, c: &QRat) -> QRat {
        match self.twist {
            CoeffTwist::Identity => c.clone(),
            CoeffTwist::Bar => c.bar(),
        }
    }

    fn ordered_letters<'a>(&self, w: &'a Word) -> Box<dyn Iterator<Item = &'a GenId> + 'a> {
        match self.kind {
            MapKind::Hom => Box::new(w.letters().iter()),
            MapKind::AntiHom => Box::new(w.letters().iter().rev()),
        }
    }

    /// Image in the free algebra (no reduction).
    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::one();
            for &g in self.ordered_letters(w) {
                acc = acc.mul(self.image(g)?);
            }
            out.add_assign_scaled(&acc, &self.twist_coeff(c));
        }
        Ok(out)
    }

    /// Image reduced against `basis` (a basis of the target), reducing after
    /// every factor.
    pub fn apply_reduced(&self, p: &NCPoly, basis: &RewriteBasis) -> Result<NCPoly> {
        let mut cache: HashMap<GenId, NCPoly> = HashMap::new();
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NCPoly::one();
            for &g in self.ordered_letters(w) {
                if let Entry::Vacant(slot) = cache.entry(g) {
                    slot.insert(basis.reduce(self.image(g)?));
                }
                acc = basis.mul_reduced(&acc, &cache[&g]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_scaled(&acc, &self.twist_coeff(c));
        }
        Ok(out)
    }

    /// Replaces every image by its normal form.
    pub fn reduce_images(&mut self, basis: &RewriteBasis) {
        for im in self.images.iter_mut().flatten() {
            *im = basis.reduce(im);
        }
    }

    /// `outer ∘ inner`: apply `inner` first. Images are reduced against
    /// `basis` (a basis of the final target) when given.
    pub fn compose(outer: &GenImageMap, inner: &GenImageMap, basis: Option<&RewriteBasis>) -> Result<GenImageMap> {
        if inner.target_name != outer.source_name || *inner.target != *outer.source {
            return Err(QavError::ChainMismatch { inner: inner.target_name.clone(), outer: outer.source_name.clone() });
        }
        let mut images = Vec::with_capacity(inner.images.len());
        for im in &inner.images {
            images.push(match im {
                None => None,
                Some(p) => Some(match basis {
                    Some(b) => outer.apply_reduced(p, b)?,
                    None => outer.apply(p)?,
                }),
            });
        }
        let kind = if inner.kind == outer.kind { MapKind::Hom } else { MapKind::AntiHom };
        let twist = if inner.twist == outer.twist { CoeffTwist::Identity } else { CoeffTwist::Bar };
        Ok(GenImageMap {
            name: format!("{}∘{}", outer.name, inner.name),
            source_name: inner.source_name.clone(),
            target_name: outer.target_name.clone(),
            source: inner.source.clone(),
            target: outer.target.clone(),
            images,
            kind,
            twist,
        })
    }

    /// Identity map on a presentation.
    pub fn identity(p: &Presentation) -> GenImageMap {
        let mut m = GenImageMap::new("id", p, p, MapKind::Hom, CoeffTwist::Identity);
        for g in p.alphabet.ids() {
            m.images[g as usize] = Some(NCPoly::gen(g));
        }
        m
    }

    /// For every generator `g`, the normal form of `self(g) - other(g)`;
    /// both maps must share source and target.
    pub fn generator_differences(&self, other: &GenImageMap, basis: &RewriteBasis) -> Result<Vec<(String, NCPoly)>> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(QavError::AlphabetMismatch);
        }
        self.source
            .ids()
            .map(|g| {
                let d = basis.reduce(&self.image(g)?.sub(other.image(g)?));
                Ok((self.source.name(g).to_string(), d))
            })
            .collect()
    }

    /// Normal forms of the images of every source relation.
    pub fn check_respects_relations(&self, source: &Presentation, basis: &RewriteBasis) -> Result<Vec<RelationImage>> {
        source
            .relations
            .iter()
            .zip(&source.labels)
            .map(|(r, label)| self.check_relation(label, r, basis))
            .collect()
    }

    pub fn check_relation(&self, label: &str, r: &NCPoly, basis: &RewriteBasis) -> Result<RelationImage> {
        let free = self.apply(r)?;
        let residual = self.apply_reduced(r, basis)?;
        let degree = free.degree();
        let verdict = if residual.is_zero() {
            Membership::Member
        } else if degree <= basis.completion_degree {
            Membership::NotMemberUpTo(basis.completion_degree)
        } else {
            Membership::Inconclusive { degree, completion_degree: basis.completion_degree }
        };
        Ok(RelationImage { label: label.to_string(), verdict, residual, degree })
    }

    /// Images as expression text, one `(generator, image)` pair per source
    /// letter.
    pub fn image_table(&self) -> Vec<(String, String)> {
        self.source
            .ids()
            .map(|g| {
                let s = self.images[g as usize].as_ref().map_or("<none>".to_string(), |p| p.to_string_in(&self.target));
                (self.source.name(g).to_string(), s)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::build_uq;
    use crate::rewrite::complete;

    #[test]
    fn anti_hom_reverses_and_twists() {
        let p = build_uq();
        let om = omega(&p);
        let x = parse_poly("q*e1*f1", &p.alphabet).unwrap();
        assert_eq!(om.apply(&x).unwrap(), parse_poly("q^-1*e1*f1", &p.alphabet).unwrap());
        let a = parse_poly("e1*k2", &p.alphabet).unwrap();
        let b = parse_poly("f2 + q*e2", &p.alphabet).unwrap();
        assert_eq!(om.apply(&a.mul(&b)).unwrap(), om.apply(&b).unwrap().mul(&om.apply(&a).unwrap()));
    }

    #[test]
    fn compose_rules() {
        let p = build_uq();
        let b = complete(&p, 6).unwrap();
        let om = omega(&p);
        let oo = GenImageMap::compose(&om, &om, Some(&b)).unwrap();
        assert_eq!(oo.kind, MapKind::Hom);
        assert_eq!(oo.twist, CoeffTwist::Identity);
        let id = GenImageMap::identity(&p);
        assert!(oo.generator_differences(&id, &b).unwrap().iter().all(|(_, d)| d.is_zero()));

        let uq2 = crate::presentations::build_uq_tensor_square();
        let delta = coproduct(&p, &uq2);
        assert!(matches!(GenImageMap::compose(&delta, &delta, None), Err(QavError::ChainMismatch { .. })));
    }

    #[test]
    fn missing_image_is_an_error() {
        let p = build_uq();
        let mut m = GenImageMap::new("partial", &p, &p, MapKind::Hom, CoeffTwist::Identity);
        m.set_expr("e1", "e2").unwrap();
        let x = parse_poly("e1*f1", &p.alphabet).unwrap();
        assert!(matches!(m.apply(&x), Err(QavError::MissingImage(g)) if g == "f1"));
    }
}
