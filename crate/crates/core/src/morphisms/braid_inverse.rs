use std::collections::BTreeSet;

use crate::error::{QavError, Result};
use crate::expr::parse_poly;
use crate::freealg::{NCPoly, Word};
use crate::presentations::Presentation;
use crate::rewrite::RewriteBasis;
use crate::scalars::{solve_linear, QRat};

use super::{braid, GenImageMap};

/// A solved inverse braid map together with the evidence that it inverts
/// `T_i`: for each generator, the normal forms of `T_i(T_i^-1(g)) - g` and
/// `T_i^-1(T_i(g)) - g`.
#[derive(Clone, Debug)]
pub struct BraidInverse {
    pub map: GenImageMap,
    /// `(unknown word, solved coefficient)` for the `e_j` and `f_j` ansatz.
    pub coefficients: Vec<(String, QRat)>,
    pub right_residuals: Vec<(String, NCPoly)>,
    pub left_residuals: Vec<(String, NCPoly)>,
}

impl BraidInverse {
    pub fn certified(&self) -> bool {
        self.right_residuals.iter().chain(&self.left_residuals).all(|(_, r)| r.is_zero())
    }
}

/// Finds `x = a u^2 v + b u v u + c v u^2` (with `u, v` both `e`'s or both
/// `f`'s) such that `t(x) = target` modulo the ideal.
fn solve_ansatz(
    t: &GenImageMap,
    basis: &RewriteBasis,
    words: [&NCPoly; 3],
    target: &NCPoly,
    label: &str,
) -> Result<(NCPoly, Vec<QRat>)> {
    let images: Vec<NCPoly> = words.iter().map(|w| t.apply_reduced(w, basis)).collect::<Result<_>>()?;
    let target = basis.reduce(target);
    let support: BTreeSet<Word> =
        images.iter().chain(std::iter::once(&target)).flat_map(|p| p.terms().map(|(w, _)| w.clone())).collect();
    let rows: Vec<Vec<QRat>> = support.iter().map(|w| images.iter().map(|p| p.coeff(w)).collect()).collect();
    let rhs: Vec<QRat> = support.iter().map(|w| target.coeff(w)).collect();
    let residual_of = |x: &[QRat]| {
        let mut r = target.neg();
        for (c, im) in x.iter().zip(&images) {
            r.add_assign_scaled(im, c);
        }
        r
    };
    match solve_linear(&rows, &rhs) {
        Some(x) => {
            let mut sol = NCPoly::zero();
            for (c, w) in x.iter().zip(words) {
                sol.add_assign_scaled(w, c);
            }
            Ok((sol, x))
        }
        None => Err(QavError::NoAnsatzSolution {
            generator: label.to_string(),
            residual: residual_of(&[QRat::zero(), QRat::zero(), QRat::zero()]).to_string_in(&basis.alphabet),
        }),
    }
}

/// Solves for `T_i^-1`. The images of `k`'s, `e_i` and `f_i` are forced;
/// `e_j` and `f_j` come from a three-term ansatz in degree `2 alpha_i +
/// alpha_j`, solved exactly over `Q(q)`.
pub fn solve_braid_inverse(p: &Presentation, basis: &RewriteBasis, i: usize) -> Result<BraidInverse> {
    let t = braid(p, i);
    let j = 3 - i;
    let name = format!("T{i}inv");
    let mut m = GenImageMap::new(&name, p, p, t.kind, t.twist);
    let set = |m: &mut GenImageMap, g: String, e: String| m.set_expr(&g, &e).expect("well-formed image");
    set(&mut m, format!("k{i}"), format!("k{i}^-1"));
    set(&mut m, format!("k{i}inv"), format!("k{i}"));
    set(&mut m, format!("k{j}"), format!("k{j}*k{i}^2"));
    set(&mut m, format!("k{j}inv"), format!("k{j}^-1*k{i}^-2"));
    set(&mut m, format!("e{i}"), format!("-k{i}^-1*f{i}"));
    set(&mut m, format!("f{i}"), format!("-e{i}*k{i}"));

    let parse = |s: String| parse_poly(&s, &p.alphabet).expect("well-formed");
    let mut coefficients = Vec::new();
    for x in ["e", "f"] {
        let ws = [
            parse(format!("{x}{i}^2*{x}{j}")),
            parse(format!("{x}{i}*{x}{j}*{x}{i}")),
            parse(format!("{x}{j}*{x}{i}^2")),
        ];
        let target = parse(format!("{x}{j}"));
        let (sol, xs) = solve_ansatz(&t, basis, [&ws[0], &ws[1], &ws[2]], &target, &format!("{x}{j}"))?;
        for (w, c) in ws.iter().zip(xs) {
            coefficients.push((w.to_string_in(&p.alphabet), c));
        }
        m.set(&format!("{x}{j}"), sol);
    }

    let right = GenImageMap::compose(&t, &m, Some(basis))?;
    let left = GenImageMap::compose(&m, &t, Some(basis))?;
    let id = GenImageMap::identity(p);
    Ok(BraidInverse {
        right_residuals: right.generator_differences(&id, basis)?,
        left_residuals: left.generator_differences(&id, basis)?,
        map: m,
        coefficients,
    })
}
