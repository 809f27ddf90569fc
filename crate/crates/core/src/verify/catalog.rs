use crate::currents::RELATIONS;
use crate::error::{QavError, Result};
use crate::freealg::{Alphabet, NCPoly};
use crate::morphisms::GenImageMap;
use crate::rewrite::RewriteBasis;
use crate::rootvectors::{b_coeff, k_monomial, Family, RootTable};
use crate::scalars::{q_minus_qinv, qint_signed, QRat};

use super::{Params, Suite};

/// Every check id, in canonical order.
pub const CATALOG: [&str; 20] = [
    "THM2_8", "COR2_9", "PROP2_10", "L3_7", "L3_8", "L3_9", "L3_10", "L3_11", "R3_12", "C3_13", "C3_14", "C3_15",
    "L3_16", "EQ3_19", "EQ3_31", "ID_LIST", "PSI_HOM", "XI_INV", "MORPH", "CUR",
];

pub const MAPS: [&str; 8] = ["T1", "T2", "T1inv", "T2inv", "Phi", "Omega", "Delta", "S"];

/// Ids run by a suite.
pub fn suite_ids(s: Suite) -> Vec<&'static str> {
    match s {
        Suite::Structural => vec!["MORPH"],
        Suite::Rootvector => CATALOG[..16].to_vec(),
        Suite::Drinfeld => vec!["PSI_HOM", "XI_INV"],
        Suite::Currents => vec!["CUR"],
        Suite::All => CATALOG.to_vec(),
    }
}

/// Upper bounds on the number of `e` and `f` letters in a word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EfDeg {
    pub e: usize,
    pub f: usize,
}

impl EfDeg {
    fn plus(self, o: EfDeg) -> EfDeg {
        EfDeg { e: self.e + o.e, f: self.f + o.f }
    }

    fn join(self, o: EfDeg) -> EfDeg {
        EfDeg { e: self.e.max(o.e), f: self.f.max(o.f) }
    }

    pub fn top(self) -> usize {
        self.e.max(self.f)
    }
}

/// Largest `e`-count and `f`-count over the words of `p`.
pub fn ef_degree(p: &NCPoly, alpha: &Alphabet) -> EfDeg {
    let mut d = EfDeg::default();
    for (w, _) in p.terms() {
        let mut x = EfDeg::default();
        for &g in w.letters() {
            match alpha.name(g).as_bytes().first() {
                Some(b'e') => x.e += 1,
                Some(b'f') => x.f += 1,
                _ => {}
            }
        }
        d = d.join(x);
    }
    d
}

/// `LHS - RHS` accumulated in normal form, with a bound on the `e`/`f`
/// degrees of every word the reductions passed through. A nonzero result
/// is a disproof only when the bound is within the completion degree.
pub struct Difference<'a> {
    pub basis: &'a RewriteBasis,
    pub acc: NCPoly,
    pub need: EfDeg,
}

impl<'a> Difference<'a> {
    pub fn new(basis: &'a RewriteBasis) -> Self {
        Difference { basis, acc: NCPoly::zero(), need: EfDeg::default() }
    }

    /// Adds `c * f1 * f2 * ...`.
    pub fn term(&mut self, c: QRat, factors: &[&NCPoly]) {
        let mut d = EfDeg::default();
        for f in factors {
            d = d.plus(ef_degree(f, &self.basis.alphabet));
        }
        self.need = self.need.join(d);
        let p = self.basis.product(factors);
        self.acc.add_assign_scaled(&p, &c);
    }

    pub fn add(&mut self, factors: &[&NCPoly]) {
        self.term(QRat::one(), factors);
    }

    pub fn sub(&mut self, factors: &[&NCPoly]) {
        self.term(-QRat::one(), factors);
    }

    /// Adds `[a, b] = ab - ba`.
    pub fn commutator(&mut self, a: &NCPoly, b: &NCPoly) {
        self.add(&[a, b]);
        self.sub(&[b, a]);
    }

    /// Adds `m(p)` reduced, tracking the degrees of the substituted words.
    pub fn image(&mut self, c: QRat, m: &GenImageMap, p: &NCPoly) -> Result<()> {
        self.need = self.need.join(map_need(m, p, &self.basis.alphabet)?);
        let x = m.apply_reduced(p, self.basis)?;
        self.acc.add_assign_scaled(&x, &c);
        Ok(())
    }
}

/// Bound on the `e`/`f` degrees met while computing `m(p)`.
pub fn map_need(m: &GenImageMap, p: &NCPoly, target: &Alphabet) -> Result<EfDeg> {
    let mut need = EfDeg::default();
    for (w, _) in p.terms() {
        let mut d = EfDeg::default();
        for &g in w.letters() {
            d = d.plus(ef_degree(m.image(g)?, target));
        }
        need = need.join(d);
    }
    Ok(need)
}

fn sign(n: i64) -> QRat {
    if n.rem_euclid(2) == 0 {
        QRat::one()
    } else {
        -QRat::one()
    }
}

/// `[2n]_q / n`
fn c2n(n: i64) -> QRat {
    &qint_signed(2 * n) * &QRat::ratio(1, n)
}

fn one() -> QRat {
    QRat::one()
}

fn idx(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| QavError::OutOfRange(format!("index {n} is negative")))
}

/// Table accessors by integer index.
struct T<'a>(&'a RootTable);

impl T<'_> {
    fn g(&self, f: Family, n: i64) -> Result<&NCPoly> {
        self.0.get(f, idx(n)?)
    }
    fn e1(&self, n: i64) -> Result<&NCPoly> {
        self.g(Family::Ealpha1, n)
    }
    fn e2(&self, n: i64) -> Result<&NCPoly> {
        self.g(Family::Ealpha2, n)
    }
    fn f1(&self, n: i64) -> Result<&NCPoly> {
        self.g(Family::Falpha1, n)
    }
    fn f2(&self, n: i64) -> Result<&NCPoly> {
        self.g(Family::Falpha2, n)
    }
    fn ed(&self, n: i64) -> Result<&NCPoly> {
        self.g(Family::Edelta, n)
    }
    fn fd(&self, n: i64) -> Result<&NCPoly> {
        self.g(Family::Fdelta, n)
    }
    fn psi(&self, n: i64) -> Result<&NCPoly> {
        self.0.psi_a(n)
    }
    fn km(&self, a: i64, b: i64) -> NCPoly {
        k_monomial(&self.0.letters, a, b)
    }
    /// `((k1 k2)^n - (k1 k2)^-n) / (q - q^-1)`
    fn kk_bracket(&self, n: i64) -> NCPoly {
        self.0.kk(n).sub(&self.0.kk(-n)).scale(&q_minus_qinv().inv())
    }
    fn gen(&self, name: &str) -> NCPoly {
        let l = &self.0.letters;
        let g = match name {
            "e1" => l.e[0],
            "e2" => l.e[1],
            "f1" => l.f[0],
            "f2" => l.f[1],
            _ => unreachable!("Chevalley letter"),
        };
        NCPoly::gen(g)
    }
}

fn bad_params(id: &str, p: &Params) -> QavError {
    QavError::OutOfRange(format!("{id}: no instance with parameters {}", p.describe()))
}

/// `LHS - RHS` of one root-vector identity.
pub fn root_identity<'a>(id: &str, p: &Params, table: &'a RootTable) -> Result<Difference<'a>> {
    let t = T(table);
    let mut d = Difference::new(&table.basis);
    let n = || p.int("n");
    let m = || p.int("m");
    match id {
        "THM2_8" => {
            let n = n()?;
            let (x, y) = match p.int("line")? {
                1 => (t.e1(n)?, t.e1(n + 1)?),
                2 => (t.e2(n)?, t.e2(n + 1)?),
                _ => return Err(bad_params(id, p)),
            };
            let ed = t.ed(1)?;
            d.add(&[ed, x]);
            d.add(&[x, ed]);
            d.term(-qint_signed(2), &[y]);
        }
        "COR2_9" => {
            let (n, m) = (n()?, m()?);
            cor_2_9(&mut d, &t, n, m)?;
        }
        "PROP2_10" => match p.int("item")? {
            1 => d.commutator(t.ed(1)?, t.ed(n()?)?),
            2 => {
                let (n, m) = (n()?, m()?);
                if n < 1 || m < 1 {
                    return Err(bad_params(id, p));
                }
                cor_2_9(&mut d, &t, n, m)?;
            }
            3 => {
                let x = t.ed(n()?)?;
                let uq = crate::presentations::build_uq();
                let (t1, t2) = (crate::morphisms::braid(&uq, 1), crate::morphisms::braid(&uq, 2));
                let mut inner = Difference::new(&table.basis);
                inner.image(one(), &t2, x)?;
                d.need = inner.need;
                d.image(one(), &t1, &inner.acc)?;
                d.sub(&[x]);
            }
            _ => return Err(bad_params(id, p)),
        },
        "L3_7" => {
            let (n, m) = (n()?, m()?);
            if n < m || n < 1 {
                return Err(bad_params(id, p));
            }
            let s = sign(n + m);
            d.add(&[t.e1(n)?, t.e1(m)?]);
            d.term(&s * &QRat::q_pow(-2), &[t.e1(m)?, t.e1(n)?]);
            d.term(-QRat::q_pow(-2), &[t.e1(n - 1)?, t.e1(m + 1)?]);
            d.term(-s, &[t.e1(m + 1)?, t.e1(n - 1)?]);
        }
        "L3_8" => {
            let (n, m) = (n()?, m()?);
            if n > m || m < 1 {
                return Err(bad_params(id, p));
            }
            let s = sign(n + m);
            d.add(&[t.e2(n)?, t.e2(m)?]);
            d.term(&s * &QRat::q_pow(-2), &[t.e2(m)?, t.e2(n)?]);
            d.term(-QRat::q_pow(-2), &[t.e2(n + 1)?, t.e2(m - 1)?]);
            d.term(-s, &[t.e2(m - 1)?, t.e2(n + 1)?]);
        }
        "L3_9" => d.commutator(t.ed(m()?)?, t.ed(n()?)?),
        "L3_10" => {
            let m = m()?;
            let inv = q_minus_qinv().inv();
            match p.text("eq")? {
                "3.6" => {
                    d.commutator(t.e1(m)?, t.f1(m)?);
                    d.term(-inv.clone(), &[&t.km(m + 1, m)]);
                    d.term(inv, &[&t.km(-m - 1, -m)]);
                }
                "3.7" => {
                    d.commutator(t.e2(m)?, t.f2(m)?);
                    d.term(-inv.clone(), &[&t.km(m, m + 1)]);
                    d.term(inv, &[&t.km(-m, -m - 1)]);
                }
                "3.8" => {
                    let n = n()?;
                    if n <= m {
                        return Err(bad_params(id, p));
                    }
                    d.commutator(t.e1(n)?, t.f1(m)?);
                    d.add(&[t.ed(n - m)?, &t.km(-m - 1, -m)]);
                }
                "3.9" => {
                    let n = n()?;
                    if n <= m {
                        return Err(bad_params(id, p));
                    }
                    d.commutator(t.e2(n)?, t.f2(m)?);
                    d.sub(&[&t.km(m, m + 1), t.ed(n - m)?]);
                }
                _ => return Err(bad_params(id, p)),
            }
        }
        "L3_11" => {
            let n = n()?;
            let kk = table.kk(n);
            match p.text("eq")? {
                "3.16" => {
                    d.commutator(t.psi(n)?, &t.gen("e1"));
                    d.term(c2n(n), &[t.e1(n)?, &kk]);
                }
                "3.17" => {
                    d.commutator(t.psi(n)?, &t.gen("e2"));
                    d.term(-c2n(n), &[&kk, t.e2(n)?]);
                }
                _ => return Err(bad_params(id, p)),
            }
        }
        "R3_12" => {
            let n = n()?;
            let kk = table.kk(n);
            let a = t.psi(n)?;
            match p.text("eq")? {
                "3.24" => {
                    let m = m()?;
                    d.commutator(a, t.e1(m)?);
                    d.term(c2n(n), &[t.e1(m + n)?, &kk]);
                }
                "3.25" => {
                    let m = m()?;
                    d.commutator(a, t.e2(m)?);
                    d.term(-c2n(n), &[&kk, t.e2(m + n)?]);
                }
                "3.26" => {
                    let f2 = t.gen("f2");
                    d.add(&[a, &f2]);
                    d.term(sign(n - 1), &[&f2, a]);
                    d.term(&c2n(n) * &QRat::q_pow(-2), &[t.e1(n - 1)?, &t.km(n, n + 1)]);
                }
                "3.27" => {
                    let f1 = t.gen("f1");
                    d.add(&[a, &f1]);
                    d.term(sign(n - 1), &[&f1, a]);
                    d.term(-(&(&sign(n) * &c2n(n)) * &QRat::q_pow(-2)), &[&t.km(n - 1, n), t.e2(n - 1)?]);
                }
                _ => return Err(bad_params(id, p)),
            }
        }
        "C3_13" => {
            let (n, m) = (n()?, m()?);
            if n >= m || n < 1 {
                return Err(bad_params(id, p));
            }
            d.commutator(t.psi(n)?, t.fd(m)?);
            let k = table.kk(n).sub(&table.kk(-n));
            d.term(c2n(n), &[t.fd(m - n)?, &table.kk(n), &k]);
        }
        "C3_14" => {
            let n = n()?;
            d.commutator(t.psi(n)?, t.fd(n)?);
            d.term(-c2n(n), &[&table.kk(n), &t.kk_bracket(n)]);
        }
        "C3_15" => {
            let (n, m) = (n()?, m()?);
            if m >= n || m < 1 {
                return Err(bad_params(id, p));
            }
            d.commutator(t.psi(n)?, t.fd(m)?);
        }
        "L3_16" => {
            let (n, m) = (n()?, m()?);
            if n < 1 || m < 1 {
                return Err(bad_params(id, p));
            }
            d.commutator(t.psi(n)?, t.psi(-m)?);
            if n == m {
                d.term(-c2n(n), &[&t.kk_bracket(n)]);
            }
        }
        "EQ3_19" => {
            let n = n()?;
            let e1 = t.gen("e1");
            d.add(&[t.ed(n)?, &e1]);
            d.term(-sign(n), &[&e1, t.ed(n)?]);
            for k in 1..n {
                d.term(-b_coeff(n, k)?, &[t.e1(k)?, t.ed(n - k)?]);
            }
            d.term(-b_coeff(n, n)?, &[t.e1(n)?]);
        }
        "EQ3_31" => {
            let k = p.int("m_minus_n")?;
            if k < 1 {
                return Err(bad_params(id, p));
            }
            let x = table.iterate(&table.t2inv_phi, &t.gen("e1"), idx(k)?)?;
            d.add(&[&x]);
            d.add(&[&t.km(1 - k, -k), t.f2(k - 1)?]);
        }
        "ID_LIST" => {
            let n = n()?;
            if n < 1 {
                return Err(bad_params(id, p));
            }
            match p.int("item")? {
                1 => {
                    d.add(&[&table.t1phi_pow(n, &t.gen("e1"))?]);
                    d.sub(&[t.e1(n)?]);
                }
                2 => {
                    d.add(&[&table.t1phi_pow(-n, &t.gen("e1"))?]);
                    d.add(&[&t.km(1 - n, -n), t.f2(n - 1)?]);
                }
                3 => {
                    d.add(&[&table.t1phi_pow(n, &t.gen("f1"))?]);
                    d.sub(&[t.f1(n)?]);
                }
                4 => {
                    d.add(&[&table.t1phi_pow(-n, &t.gen("f1"))?]);
                    d.add(&[t.e2(n - 1)?, &t.km(n - 1, n)]);
                }
                _ => return Err(bad_params(id, p)),
            }
        }
        _ => return Err(QavError::UnknownCheck(id.to_string())),
    }
    Ok(d)
}

/// `E_{(n+m+1)delta} - E_{n delta+alpha1} E_{m delta+alpha2}
/// - (-1)^{n+m+1} q^-2 E_{m delta+alpha2} E_{n delta+alpha1}`
fn cor_2_9(d: &mut Difference<'_>, t: &T<'_>, n: i64, m: i64) -> Result<()> {
    d.add(&[t.ed(n + m + 1)?]);
    d.sub(&[t.e1(n)?, t.e2(m)?]);
    d.term(-(&sign(n + m + 1) * &QRat::q_pow(-2)), &[t.e2(m)?, t.e1(n)?]);
    Ok(())
}

fn ints(pairs: &[(&str, i64)]) -> Params {
    let mut p = Params::default();
    for (k, v) in pairs {
        p.set_int(k, *v);
    }
    p
}

/// The default instance grid of a root-vector id; `g` is the grid bound.
pub fn root_grid(id: &str, g: i64) -> Vec<Params> {
    let mut out = Vec::new();
    let pairs = |lo: i64, hi: i64| (lo..=hi).flat_map(move |a| (lo..=hi).map(move |b| (a, b)));
    match id {
        "THM2_8" => {
            for line in 1..=2 {
                for n in 0..=g {
                    out.push(ints(&[("line", line), ("n", n)]));
                }
            }
        }
        "COR2_9" => {
            for (n, m) in pairs(0, g).filter(|(n, m)| n + m <= g) {
                out.push(ints(&[("n", n), ("m", m)]));
            }
        }
        "PROP2_10" => {
            for n in 1..=g {
                out.push(ints(&[("item", 1), ("n", n)]));
            }
            for (n, m) in pairs(1, g).filter(|(n, m)| n + m <= g) {
                out.push(ints(&[("item", 2), ("n", n), ("m", m)]));
            }
            for n in 1..=g {
                out.push(ints(&[("item", 3), ("n", n)]));
            }
        }
        "L3_7" => {
            for (n, m) in pairs(0, g).filter(|&(n, m)| n >= 1 && m < g && n >= m) {
                out.push(ints(&[("n", n), ("m", m)]));
            }
        }
        "L3_8" => {
            for (n, m) in pairs(0, g).filter(|&(n, m)| m >= 1 && n < g && n <= m) {
                out.push(ints(&[("n", n), ("m", m)]));
            }
        }
        "L3_9" | "C3_13" => {
            for (m, n) in pairs(1, g).filter(|(m, n)| m < n) {
                if id == "L3_9" {
                    out.push(ints(&[("m", m), ("n", n)]));
                } else {
                    out.push(ints(&[("n", m), ("m", n)]));
                }
            }
        }
        "C3_15" => {
            for (m, n) in pairs(1, g).filter(|(m, n)| m < n) {
                out.push(ints(&[("n", n), ("m", m)]));
            }
        }
        "L3_10" => {
            for eq in ["3.6", "3.7"] {
                for m in 0..g {
                    let mut p = ints(&[("m", m)]);
                    p.set_text("eq", eq);
                    out.push(p);
                }
            }
            for eq in ["3.8", "3.9"] {
                for (m, n) in pairs(0, g).filter(|&(m, n)| m < g && n > m) {
                    let mut p = ints(&[("n", n), ("m", m)]);
                    p.set_text("eq", eq);
                    out.push(p);
                }
            }
        }
        "L3_11" => {
            for eq in ["3.16", "3.17"] {
                for n in 1..=2 {
                    let mut p = ints(&[("n", n)]);
                    p.set_text("eq", eq);
                    out.push(p);
                }
            }
        }
        "R3_12" => {
            for eq in ["3.24", "3.25"] {
                for n in 1..=2 {
                    for m in 0..=1 {
                        let mut p = ints(&[("n", n), ("m", m)]);
                        p.set_text("eq", eq);
                        out.push(p);
                    }
                }
            }
            for eq in ["3.26", "3.27"] {
                for n in 1..=2 {
                    let mut p = ints(&[("n", n)]);
                    p.set_text("eq", eq);
                    out.push(p);
                }
            }
        }
        "C3_14" => {
            for n in 1..=2 {
                out.push(ints(&[("n", n)]));
            }
        }
        "L3_16" => {
            for (n, m) in pairs(1, 2) {
                out.push(ints(&[("n", n), ("m", m)]));
            }
        }
        "EQ3_19" => {
            for n in 1..=g {
                out.push(ints(&[("n", n)]));
            }
        }
        "EQ3_31" => {
            for k in 1..=2 {
                out.push(ints(&[("m_minus_n", k)]));
            }
        }
        "ID_LIST" => {
            for item in 1..=4 {
                for n in 1..=g {
                    out.push(ints(&[("item", item), ("n", n)]));
                }
            }
        }
        _ => {}
    }
    out
}

/// Relation labels of the Chevalley presentation checked under a map:
/// Serre relations only in the extended grid, except for `Phi` and `Omega`
/// whose images of them stay quartic.
pub fn morph_grid(map: &str, labels: &[String], extended: bool) -> Vec<Params> {
    let cheap = matches!(map, "Phi" | "Omega");
    labels
        .iter()
        .filter(|l| extended || cheap || !l.starts_with("A4"))
        .map(|l| {
            let mut p = Params::default();
            p.set_text("map", map);
            p.set_text("relation", l);
            p
        })
        .collect()
}

pub fn current_grid() -> Vec<Params> {
    RELATIONS
        .iter()
        .map(|r| {
            let mut p = Params::default();
            p.set_text("relation", r);
            p
        })
        .collect()
}
