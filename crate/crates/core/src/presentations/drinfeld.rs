use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::currents::k_modes_from_a;
use crate::error::{QavError, Result};
use crate::freealg::{Alphabet, GenId, NCPoly, Word};
use crate::rewrite::MonomialOrder;
use crate::scalars::{q_minus_qinv, qint_signed, QRat};

use super::{lin, Presentation};

/// Truncation of the mode generators: `x+-(k)` for `|k| <= k`, `a(l)` for
/// `0 < |l| <= l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeWindow {
    pub k: i64,
    pub l: i64,
}

impl ModeWindow {
    pub fn new(k: i64, l: i64) -> Result<Self> {
        if k < 1 || l < 1 {
            return Err(QavError::WindowTooSmall(format!("K = {k}, L = {l}; both must be at least 1")));
        }
        Ok(ModeWindow { k, l })
    }
}

/// Letter ids of a windowed mode alphabet.
#[derive(Clone, Debug)]
pub struct DrinfeldLetters {
    pub window: ModeWindow,
    xp: BTreeMap<i64, GenId>,
    xm: BTreeMap<i64, GenId>,
    a: BTreeMap<i64, GenId>,
    pub gam: GenId,
    pub gaminv: GenId,
    pub k2: GenId,
    pub k2inv: GenId,
}

impl DrinfeldLetters {
    pub fn of(alpha: &Alphabet, window: ModeWindow) -> Self {
        let g = |n: String| alpha.id(&n).unwrap_or_else(|| panic!("alphabet lacks {n}"));
        let ks = -window.k..=window.k;
        DrinfeldLetters {
            window,
            xp: ks.clone().map(|k| (k, g(format!("xp({k})")))).collect(),
            xm: ks.map(|k| (k, g(format!("xm({k})")))).collect(),
            a: (-window.l..=window.l).filter(|&l| l != 0).map(|l| (l, g(format!("a({l})")))).collect(),
            gam: g("gam".into()),
            gaminv: g("gaminv".into()),
            k2: g("k2".into()),
            k2inv: g("k2inv".into()),
        }
    }

    /// `x+(k)` for `plus`, `x-(k)` otherwise; `None` outside the window.
    pub fn x(&self, plus: bool, k: i64) -> Option<GenId> {
        if plus { self.xp.get(&k) } else { self.xm.get(&k) }.copied()
    }

    pub fn a(&self, l: i64) -> Option<GenId> {
        self.a.get(&l).copied()
    }

    /// `gamma^n` as a word (negative `n` uses the inverse letter).
    pub fn gamma_pow(&self, n: i64) -> Word {
        let g = if n >= 0 { self.gam } else { self.gaminv };
        Word::from_slice(&vec![g; n.unsigned_abs() as usize])
    }
}

fn mode_alphabet(w: ModeWindow) -> Alphabet {
    let (kk, ll) = (w.k, w.l);
    let mut names: Vec<String> = Vec::new();
    names.extend((-kk..=kk).map(|k| format!("xm({k})")));
    names.extend((-ll..=-1).map(|l| format!("a({l})")));
    names.extend(["gaminv", "gam", "k2inv", "k2"].map(String::from));
    names.extend((1..=ll).map(|l| format!("a({l})")));
    names.extend((-kk..=kk).map(|k| format!("xp({k})")));
    let mut alpha = Alphabet::new(&names).with_inverse_pair("gam", "gaminv").with_inverse_pair("k2", "k2inv");
    // gamma and k2 weigh nothing; a(l) outweighs any x-mode shift it causes
    // and two x-modes outweigh any k+-(m) expansion.
    for n in ["gam", "gaminv", "k2", "k2inv"] {
        alpha = alpha.with_weight(n, 0);
    }
    for l in (-ll..=ll).filter(|&l| l != 0) {
        alpha = alpha.with_weight(&format!("a({l})"), 2 * l.unsigned_abs() as u32 + 1);
    }
    for k in -kk..=kk {
        let wt = 2 * k.unsigned_abs() as u32 + ll as u32 + 1;
        alpha = alpha.with_weight(&format!("xp({k})"), wt).with_weight(&format!("xm({k})"), wt);
    }
    alpha
}

fn sign(even: bool) -> QRat {
    if even {
        QRat::one()
    } else {
        -QRat::one()
    }
}

/// `x+(l) x-(l') - x-(l') x+(l) - (gamma^l k+(l+l') - gamma^-l k-(l+l')) / (q - q^-1)`,
/// or `None` when a mode falls outside the window.
pub(crate) fn d6_relation(d: &DrinfeldLetters, kplus: &[NCPoly], kminus: &[NCPoly], l: i64, lp: i64) -> Option<NCPoly> {
    let (xp, xm) = (d.x(true, l)?, d.x(false, lp)?);
    let m = l + lp;
    if m.abs() > d.window.l {
        return None;
    }
    let mut r = lin(&[(QRat::one(), &[xp, xm]), (-QRat::one(), &[xm, xp])]);
    let c = q_minus_qinv().inv();
    if m >= 0 {
        let g = NCPoly::word(d.gamma_pow(l));
        r.add_assign_scaled(&g.mul(&kplus[m as usize]), &-c.clone());
    }
    if m <= 0 {
        let g = NCPoly::word(d.gamma_pow(-l));
        r.add_assign_scaled(&g.mul(&kminus[(-m) as usize]), &c);
    }
    Some(r)
}

/// The mode algebra on the window `w`. Families whose instances all fall
/// outside the window are recorded in `warnings`.
pub fn build_drinfeld(w: ModeWindow) -> Presentation {
    let alpha = mode_alphabet(w);
    let order = MonomialOrder::weighted(&alpha);
    let alpha = Arc::new(alpha);
    let d = DrinfeldLetters::of(&alpha, w);
    let mut p = Presentation::new(&format!("drinfeld K={} L={}", w.k, w.l), alpha.clone(), order);
    let one = QRat::one;
    let (kk, ll) = (w.k, w.l);
    let ks: Vec<i64> = (-kk..=kk).collect();
    let ls: Vec<i64> = (-ll..=ll).filter(|&l| l != 0).collect();

    // D1: gamma and k2 commute; gamma^2 is central.
    // Forms with inverse letters follow from the stated ones; listing them
    // keeps low-degree bases confluent on conjugation by gamma^-1, k2^-1.
    for (g, k) in [(d.gam, d.k2), (d.gam, d.k2inv), (d.gaminv, d.k2), (d.gaminv, d.k2inv)] {
        let name = format!("D1 {} {}", alpha.name(g), alpha.name(k));
        p.push(name, lin(&[(one(), &[g, k]), (-one(), &[k, g])]));
    }
    for (a, b) in [(d.gam, d.gaminv), (d.gaminv, d.gam), (d.k2, d.k2inv), (d.k2inv, d.k2)] {
        p.push(format!("D1 inv {}", alpha.name(a)), lin(&[(one(), &[a, b]), (-one(), &[])]));
    }
    for x in alpha.ids().filter(|&x| ![d.gam, d.gaminv].contains(&x)) {
        for g in [d.gam, d.gaminv] {
            p.push(
                format!("D1 {}^2 {}", alpha.name(g), alpha.name(x)),
                lin(&[(one(), &[g, g, x]), (-one(), &[x, g, g])]),
            );
        }
    }

    // D2
    for &l in &ls {
        let a = d.a(l).unwrap();
        for g in [d.gam, d.gaminv] {
            p.push(format!("D2 {} a({l})", alpha.name(g)), lin(&[(one(), &[g, a]), (-one(), &[a, g])]));
        }
        for k in [d.k2, d.k2inv] {
            let c = sign(l % 2 == 0);
            p.push(format!("D2 {} a({l})", alpha.name(k)), lin(&[(one(), &[k, a]), (-c, &[a, k])]));
        }
    }
    for plus in [true, false] {
        let pm = if plus { "+" } else { "-" };
        let q2 = QRat::q_pow(if plus { 2 } else { -2 });
        for &k in &ks {
            let x = d.x(plus, k).unwrap();
            for g in [d.gam, d.gaminv] {
                p.push(format!("D2 {} x{pm}({k})", alpha.name(g)), lin(&[(one(), &[g, x]), (one(), &[x, g])]));
            }
            let c = sign((k + 1) % 2 == 0) * q2.clone();
            p.push(format!("D2 k2 x{pm}({k})"), lin(&[(one(), &[d.k2, x]), (-c.clone(), &[x, d.k2])]));
            p.push(format!("D2 k2inv x{pm}({k})"), lin(&[(one(), &[d.k2inv, x]), (-c.inv(), &[x, d.k2inv])]));
        }
    }

    // D3
    let before = p.relations.len();
    for &l in &ls {
        for &lp in ls.iter().filter(|&&lp| lp > l) {
            let (a, b) = (d.a(l).unwrap(), d.a(lp).unwrap());
            let mut r = lin(&[(one(), &[a, b]), (-one(), &[b, a])]);
            if l + lp == 0 {
                let c = qint_signed(2 * l) / QRat::from_int(l.abs()) / q_minus_qinv();
                let g = NCPoly::word(d.gamma_pow(l.abs())).sub(&NCPoly::word(d.gamma_pow(-l.abs())));
                r.add_assign_scaled(&g, &-c);
            }
            p.push(format!("D3 a({l}) a({lp})"), r);
        }
    }
    if p.relations.len() == before {
        p.warnings.push("D3: no in-window instance".into());
    }

    // D4 is stated for l > 0 only
    let before = p.relations.len();
    for &l in ls.iter().filter(|&&l| l > 0) {
        let c = qint_signed(2 * l) / QRat::from_int(l);
        for plus in [true, false] {
            let pm = if plus { "+" } else { "-" };
            for &k in &ks {
                let Some(y) = d.x(plus, l + k) else { continue };
                let (a, x) = (d.a(l).unwrap(), d.x(plus, k).unwrap());
                let mut r = lin(&[(one(), &[a, x]), (-one(), &[x, a])]);
                r.add_term(Word::letter(y).concat(&d.gamma_pow(l)), &c);
                p.push(format!("D4 a({l}) x{pm}({k})"), r);
            }
        }
    }
    if p.relations.len() == before {
        p.warnings.push("D4: no in-window instance".into());
    }

    // D5
    let before = p.relations.len();
    for plus in [true, false] {
        let pm = if plus { "+" } else { "-" };
        for &k in ks.iter().filter(|&&k| k < kk) {
            for &kp in ks.iter().filter(|&&kp| kp >= k && kp < kk) {
                let x = |n: i64| d.x(plus, n).unwrap();
                let s = sign((k + kp + 1) % 2 == 0);
                let q2 = QRat::q_pow(2);
                let r = lin(&[
                    (one(), &[x(k + 1), x(kp)]),
                    (-q2.clone(), &[x(k), x(kp + 1)]),
                    (-s.clone(), &[x(kp + 1), x(k)]),
                    (s * q2, &[x(kp), x(k + 1)]),
                ]);
                if !r.is_zero() {
                    p.push(format!("D5 x{pm} k={k} k'={kp}"), r);
                }
            }
        }
    }
    if p.relations.len() == before {
        p.warnings.push("D5: no in-window instance".into());
    }

    // D6
    let kplus = k_modes_from_a(&d, ll, true).expect("window order");
    let kminus = k_modes_from_a(&d, ll, false).expect("window order");
    for &l in &ks {
        for &lp in &ks {
            if let Some(r) = d6_relation(&d, &kplus, &kminus, l, lp) {
                p.push(format!("D6 l={l} l'={lp}"), r);
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres() -> Presentation {
        build_drinfeld(ModeWindow::new(2, 2).unwrap())
    }

    #[test]
    fn window_must_be_positive() {
        assert!(ModeWindow::new(0, 1).is_err());
        assert!(ModeWindow::new(1, 0).is_err());
    }

    #[test]
    fn relations_stay_in_window() {
        let p = pres();
        assert!(p.relations_use_only(|n| p.alphabet.id(n).is_some()));
        assert!(p.warnings.is_empty(), "{:?}", p.warnings);
        assert_eq!(pres().hash(), p.hash());
    }

    #[test]
    fn d3_instance() {
        let p = pres();
        let i = p.labels.iter().position(|l| l == "D3 a(-1) a(1)").unwrap();
        // [a(-1), a(1)] = -[2] (gam - gam^-1)/(q - q^-1)
        let want = crate::expr::parse_poly(
            "a(-1)*a(1) - a(1)*a(-1) + (q + q^-1)*(gam - gam^-1)/(q - q^-1)",
            &p.alphabet,
        )
        .unwrap();
        assert_eq!(p.relations[i], want);
    }

    #[test]
    fn d2_sign_at_mode_zero() {
        let p = pres();
        let i = p.labels.iter().position(|l| l == "D2 k2 x+(0)").unwrap();
        let want = crate::expr::parse_poly("k2*xp(0) + q^2*xp(0)*k2", &p.alphabet).unwrap();
        assert_eq!(p.relations[i], want);
    }

    #[test]
    fn d5_diagonal_instance_is_doubled() {
        let p = pres();
        let i = p.labels.iter().position(|l| l == "D5 x+ k=0 k'=0").unwrap();
        let want = crate::expr::parse_poly("2*xp(1)*xp(0) - 2*q^2*xp(0)*xp(1)", &p.alphabet).unwrap();
        assert_eq!(p.relations[i], want);
    }

    #[test]
    fn d6_leading_word_is_the_commutator() {
        let p = pres();
        for (r, lbl) in p.relations.iter().zip(&p.labels).filter(|(_, l)| l.starts_with("D6")) {
            let lead = r.terms().max_by(|a, b| p.order.cmp(a.0, b.0)).unwrap().0;
            assert_eq!(lead.len(), 2, "{lbl}");
        }
    }
}
