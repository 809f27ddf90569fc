use crate::error::Result;
use crate::freealg::{NCPoly, Word};
use crate::presentations::Presentation;
use crate::rewrite::RewriteBasis;
use crate::scalars::QRat;

use super::{CoeffTwist, GenImageMap, MapKind};

fn other(i: usize) -> usize {
    3 - i
}

/// The braid automorphism `T_i` (`i` is 1 or 2).
pub fn braid(p: &Presentation, i: usize) -> GenImageMap {
    assert!(i == 1 || i == 2, "braid index must be 1 or 2");
    let j = other(i);
    let mut m = GenImageMap::new(&format!("T{i}"), p, p, MapKind::Hom, CoeffTwist::Identity);
    let set = |m: &mut GenImageMap, g: String, e: String| m.set_expr(&g, &e).expect("well-formed image");
    set(&mut m, format!("k{i}"), format!("k{i}^-1"));
    set(&mut m, format!("k{i}inv"), format!("k{i}"));
    // a_ij = -2
    set(&mut m, format!("k{j}"), format!("k{j}*k{i}^2"));
    set(&mut m, format!("k{j}inv"), format!("k{j}^-1*k{i}^-2"));
    set(&mut m, format!("e{i}"), format!("-f{i}*k{i}"));
    set(&mut m, format!("f{i}"), format!("-k{i}^-1*e{i}"));
    set(
        &mut m,
        format!("e{j}"),
        format!(
            "e{i}^2*e{j}/(q + q^-1) - q^-2*e{j}*e{i}^2/(q + q^-1) + (1 - q^-2)/(q + q^-1)*e{i}*e{j}*e{i}"
        ),
    );
    set(
        &mut m,
        format!("f{j}"),
        format!("-q^2*f{i}^2*f{j}/(q + q^-1) + f{j}*f{i}^2/(q + q^-1) + (1 - q^2)/(q + q^-1)*f{i}*f{j}*f{i}"),
    );
    m
}

/// Index swap `1 <-> 2`.
pub fn phi(p: &Presentation) -> GenImageMap {
    let mut m = GenImageMap::new("Phi", p, p, MapKind::Hom, CoeffTwist::Identity);
    for (a, b) in [("e1", "e2"), ("f1", "f2"), ("k1", "k2"), ("k1inv", "k2inv")] {
        m.set_expr(a, b).unwrap();
        m.set_expr(b, a).unwrap();
    }
    m
}

/// The anti-automorphism `e_i <-> f_i`, `k_i -> k_i^-1`, `q -> q^-1`.
pub fn omega(p: &Presentation) -> GenImageMap {
    let mut m = GenImageMap::new("Omega", p, p, MapKind::AntiHom, CoeffTwist::Bar);
    for i in 1..=2 {
        m.set_expr(&format!("e{i}"), &format!("f{i}")).unwrap();
        m.set_expr(&format!("f{i}"), &format!("e{i}")).unwrap();
        m.set_expr(&format!("k{i}"), &format!("k{i}^-1")).unwrap();
        m.set_expr(&format!("k{i}inv"), &format!("k{i}")).unwrap();
    }
    m
}

/// `Delta: U -> U (x) U`; primed letters are the second tensor factor.
pub fn coproduct(p: &Presentation, square: &Presentation) -> GenImageMap {
    let mut m = GenImageMap::new("Delta", p, square, MapKind::Hom, CoeffTwist::Identity);
    for i in 1..=2 {
        m.set_expr(&format!("e{i}"), &format!("e{i} + k{i}*e{i}'")).unwrap();
        m.set_expr(&format!("f{i}"), &format!("f{i}' + f{i}*k{i}inv'")).unwrap();
        m.set_expr(&format!("k{i}"), &format!("k{i}*k{i}'")).unwrap();
        m.set_expr(&format!("k{i}inv"), &format!("k{i}inv*k{i}inv'")).unwrap();
    }
    m
}

/// The antipode, an anti-homomorphism.
pub fn antipode(p: &Presentation) -> GenImageMap {
    let mut m = GenImageMap::new("S", p, p, MapKind::AntiHom, CoeffTwist::Identity);
    for i in 1..=2 {
        m.set_expr(&format!("e{i}"), &format!("-k{i}^-1*e{i}")).unwrap();
        m.set_expr(&format!("f{i}"), &format!("-f{i}*k{i}")).unwrap();
        m.set_expr(&format!("k{i}"), &format!("k{i}^-1")).unwrap();
        m.set_expr(&format!("k{i}inv"), &format!("k{i}")).unwrap();
    }
    m
}

/// The counit: words made only of `k`-letters map to 1, every other word
/// to 0.
pub fn counit(p: &Presentation, x: &NCPoly) -> QRat {
    let is_k = |w: &Word| w.letters().iter().all(|&g| p.alphabet.name(g).starts_with('k'));
    let mut s = QRat::zero();
    for (w, c) in x.terms() {
        if is_k(w) {
            s += c;
        }
    }
    s
}

/// For each generator `x`, the normal forms of `m(S (x) id)Delta(x) - eps(x)`
/// and `m(id (x) S)Delta(x) - eps(x)`.
pub fn antipode_axiom_residuals(
    p: &Presentation,
    square: &Presentation,
    basis: &RewriteBasis,
) -> Result<Vec<(String, NCPoly, NCPoly)>> {
    let delta = coproduct(p, square);
    let s = antipode(p);
    let n = p.alphabet.len();
    let mut out = Vec::new();
    for g in p.alphabet.ids() {
        let d = delta.image(g)?;
        let eps = NCPoly::scalar(counit(p, &NCPoly::gen(g)));
        let (mut left, mut right) = (NCPoly::zero(), NCPoly::zero());
        for (w, c) in d.terms() {
            let cut = w.letters().iter().position(|&x| x as usize >= n).unwrap_or(w.len());
            let a = NCPoly::word(Word::from_slice(&w.letters()[..cut]));
            let b = NCPoly::word(Word::from_slice(
                &w.letters()[cut..].iter().map(|&x| x - n as u16).collect::<Vec<_>>(),
            ));
            left.add_assign_scaled(&basis.mul_reduced(&s.apply_reduced(&a, basis)?, &b), c);
            right.add_assign_scaled(&basis.mul_reduced(&a, &s.apply_reduced(&b, basis)?), c);
        }
        out.push((p.alphabet.name(g).to_string(), basis.reduce(&left.sub(&eps)), basis.reduce(&right.sub(&eps))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::presentations::{build_uq, build_uq_tensor_square};
    use crate::rewrite::complete;

    #[test]
    fn displayed_images() {
        let p = build_uq();
        let t1 = braid(&p, 1);
        assert_eq!(t1.image_of("e1").unwrap().to_string_in(&p.alphabet), "-f1*k1");
        assert_eq!(t1.image_of("k2").unwrap().to_string_in(&p.alphabet), "k2*k1^2");
        assert_eq!(phi(&p).image_of("e1").unwrap().to_string_in(&p.alphabet), "e2");
        let sq = build_uq_tensor_square();
        let d = coproduct(&p, &sq);
        assert_eq!(d.image_of("f1").unwrap(), &parse_poly("f1' + f1*k1inv'", &sq.alphabet).unwrap());
    }

    #[test]
    fn counit_values() {
        let p = build_uq();
        let x = parse_poly("k1*k2^-1 + 3*e1*k1", &p.alphabet).unwrap();
        assert_eq!(counit(&p, &x), QRat::one());
    }

    #[test]
    fn antipode_axioms_on_generators() {
        let p = build_uq();
        let sq = build_uq_tensor_square();
        let b = complete(&p, 4).unwrap();
        for (g, l, r) in antipode_axiom_residuals(&p, &sq, &b).unwrap() {
            assert!(l.is_zero() && r.is_zero(), "{g}: {l:?} {r:?}");
        }
    }
}
