use std::sync::Arc;

use crate::freealg::{Alphabet, GenId, NCPoly};
use crate::rewrite::MonomialOrder;
use crate::scalars::{q_minus_qinv, QRat};

use super::{lin, Presentation};

/// Generalized Cartan matrix of type A1^(1).
pub const CARTAN: [[i32; 2]; 2] = [[2, -2], [-2, 2]];

/// Letter names in precedence order; normal words read F * K * E.
const UQ_NAMES: [&str; 8] = ["f2", "f1", "k2inv", "k2", "k1inv", "k1", "e1", "e2"];

/// Letter ids of the Chevalley alphabet.
#[derive(Clone, Copy, Debug)]
pub struct UqLetters {
    pub e: [GenId; 2],
    pub f: [GenId; 2],
    pub k: [GenId; 2],
    pub kinv: [GenId; 2],
}

impl UqLetters {
    pub fn of(alpha: &Alphabet) -> Self {
        Self::with_suffix(alpha, "")
    }

    /// Letters of the second tensor factor in a doubled alphabet.
    pub fn primed(alpha: &Alphabet) -> Self {
        Self::with_suffix(alpha, "'")
    }

    fn with_suffix(alpha: &Alphabet, s: &str) -> Self {
        let g = |n: &str| alpha.id(&format!("{n}{s}")).unwrap_or_else(|| panic!("alphabet lacks {n}{s}"));
        UqLetters {
            e: [g("e1"), g("e2")],
            f: [g("f1"), g("f2")],
            k: [g("k1"), g("k2")],
            kinv: [g("k1inv"), g("k2inv")],
        }
    }
}

/// Root-lattice degree of a Chevalley letter (a trailing `'` is ignored).
pub fn root_weight(name: &str) -> Option<[i32; 2]> {
    Some(match name.trim_end_matches('\'') {
        "e1" => [1, 0],
        "e2" => [0, 1],
        "f1" => [-1, 0],
        "f2" => [0, -1],
        "k1" | "k1inv" | "k2" | "k2inv" => [0, 0],
        _ => return None,
    })
}

fn is_homogeneous(p: &NCPoly, alpha: &Alphabet) -> bool {
    let deg = |w: &crate::freealg::Word| {
        w.letters().iter().fold([0, 0], |acc, &g| {
            let r = root_weight(alpha.name(g)).expect("Chevalley letter");
            [acc[0] + r[0], acc[1] + r[1]]
        })
    };
    let mut it = p.terms().map(|(w, _)| deg(w));
    match it.next() {
        None => true,
        Some(d) => it.all(|e| e == d),
    }
}

fn uq_alphabet() -> Alphabet {
    Alphabet::new(&UQ_NAMES).with_inverse_pair("k1", "k1inv").with_inverse_pair("k2", "k2inv")
}

fn push_uq_relations(p: &mut Presentation, l: UqLetters, tag: &str) {
    let one = QRat::one;
    let q2 = QRat::q_pow(2);
    let qm2 = QRat::q_pow(-2);
    let name = |i: usize| i + 1;

    p.push(format!("A1{tag} k1 k2"), lin(&[(one(), &[l.k[0], l.k[1]]), (-one(), &[l.k[1], l.k[0]])]));
    for i in 0..2 {
        p.push(
            format!("inv{tag} k{}", name(i)),
            lin(&[(one(), &[l.k[i], l.kinv[i]]), (-one(), &[])]),
        );
        p.push(
            format!("inv{tag} k{}inv", name(i)),
            lin(&[(one(), &[l.kinv[i], l.k[i]]), (-one(), &[])]),
        );
    }
    for i in 0..2 {
        for j in 0..2 {
            // k_i e_j = c e_j k_i and k_i f_j = c' f_j k_i
            let (ce, cf) = if i == j { (-q2.clone(), -qm2.clone()) } else { (qm2.clone(), q2.clone()) };
            p.push(
                format!("A2{tag} k{} e{}", name(i), name(j)),
                lin(&[(one(), &[l.k[i], l.e[j]]), (-ce, &[l.e[j], l.k[i]])]),
            );
            p.push(
                format!("A2{tag} k{} f{}", name(i), name(j)),
                lin(&[(one(), &[l.k[i], l.f[j]]), (-cf, &[l.f[j], l.k[i]])]),
            );
        }
    }
    let inv_qq = q_minus_qinv().inv();
    for i in 0..2 {
        for j in 0..2 {
            let mut r = lin(&[(one(), &[l.e[i], l.f[j]]), (-one(), &[l.f[j], l.e[i]])]);
            if i == j {
                r = r.sub(&lin(&[(inv_qq.clone(), &[l.k[i]]), (-inv_qq.clone(), &[l.kinv[i]])]));
            }
            p.push(format!("A3{tag} e{} f{}", name(i), name(j)), r);
        }
    }
    // x^3 y + c x^2 y x + c x y x^2 + y x^3 = 0 with c = 1 - q^2 - q^-2
    let c = QRat::laurent(-2, &[-1, 0, 1, 0, -1]);
    for (i, j) in [(0, 1), (1, 0)] {
        for (x, y, lbl) in [(l.e[i], l.e[j], "e"), (l.f[i], l.f[j], "f")] {
            p.push(
                format!("A4{tag} {lbl}{} {lbl}{}", name(i), name(j)),
                lin(&[
                    (one(), &[x, x, x, y]),
                    (c.clone(), &[x, x, y, x]),
                    (c.clone(), &[x, y, x, x]),
                    (one(), &[y, x, x, x]),
                ]),
            );
        }
    }
}

/// The quantum affine algebra in Chevalley generators `e_i, f_i, k_i^{+-1}`.
/// Relations (21 in all): commuting `k`s, four inverse pairs, eight
/// `k`-weight relations, four `[e_i, f_j]` relations and four quartic Serre
/// relations (two in `e`, two in `f`).
pub fn build_uq() -> Presentation {
    let alpha = uq_alphabet();
    let order = MonomialOrder::deglex(&alpha);
    let alpha = Arc::new(alpha);
    let mut p = Presentation::new("uq", alpha.clone(), order);
    push_uq_relations(&mut p, UqLetters::of(&alpha), "");
    for (r, lbl) in p.relations.iter().zip(&p.labels) {
        assert!(is_homogeneous(r, &alpha), "inhomogeneous relation {lbl}");
    }
    p
}

/// `U (x) U` on the doubled alphabet: unprimed letters are the first tensor
/// factor, primed letters the second. Both copies of the relations plus
/// `a' b - b a'` for every pair of letters.
pub fn build_uq_tensor_square() -> Presentation {
    let base = uq_alphabet();
    let n = base.len();
    let alpha = base.doubled();
    let order = MonomialOrder::deglex(&alpha);
    let alpha = Arc::new(alpha);
    let mut p = Presentation::new("uq2", alpha.clone(), order);
    push_uq_relations(&mut p, UqLetters::of(&alpha), "");
    push_uq_relations(&mut p, UqLetters::primed(&alpha), "'");
    for a in 0..n as GenId {
        for b in 0..n as GenId {
            let ap = a + n as GenId;
            p.push(
                format!("cross {}' {}", alpha.name(a), alpha.name(b)),
                lin(&[(QRat::one(), &[ap, b]), (-QRat::one(), &[b, ap])]),
            );
        }
    }
    p
}
