//! Real and imaginary root vectors of the Chevalley presentation, the
//! coefficients `b^(n)_k`, and the images of the Heisenberg modes `a(l)`
//! under the Drinfeld map.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QavError, Result};
use crate::freealg::NCPoly;
use crate::morphisms::{braid, omega, phi, solve_braid_inverse, BraidInverse, GenImageMap};
use crate::presentations::{Presentation, UqLetters};
use crate::rewrite::RewriteBasis;
use crate::scalars::{q_minus_qinv, qint_signed, QRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    E,
    F,
}

/// The stored families, one entry per `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `E_{n delta + alpha_1} = (T1 Phi)^n(e1)`
    Ealpha1,
    /// `E_{n delta + alpha_2} = (T2^-1 Phi)^n(e2)`
    Ealpha2,
    Falpha1,
    Falpha2,
    Edelta,
    Fdelta,
    /// images of `a(n)`
    PsiA,
    /// images of `a(-n)`
    PsiAneg,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Ealpha1,
        Family::Ealpha2,
        Family::Falpha1,
        Family::Falpha2,
        Family::Edelta,
        Family::Fdelta,
        Family::PsiA,
        Family::PsiAneg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ealpha1 => "Ealpha1",
            Family::Ealpha2 => "Ealpha2",
            Family::Falpha1 => "Falpha1",
            Family::Falpha2 => "Falpha2",
            Family::Edelta => "Edelta",
            Family::Fdelta => "Fdelta",
            Family::PsiA => "PsiA",
            Family::PsiAneg => "PsiAneg",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| QavError::OutOfRange(format!("unknown root family `{s}`")))
    }

    /// Smallest index stored for the family.
    pub fn first(self) -> usize {
        match self {
            Family::Edelta | Family::Fdelta | Family::PsiA | Family::PsiAneg => 1,
            _ => 0,
        }
    }
}

/// `k1^a k2^b` with inverse letters for negative exponents.
pub fn k_monomial(l: &UqLetters, a: i64, b: i64) -> NCPoly {
    let pow = |g, ginv, e: i64| {
        let letter = if e >= 0 { g } else { ginv };
        NCPoly::monomial(&vec![letter; e.unsigned_abs() as usize])
    };
    pow(l.k[0], l.kinv[0], a).mul(&pow(l.k[1], l.kinv[1], b))
}

/// `b^(n)_k`: `(-1)^(n-1) q^(-2(k-1)) (q^2 - q^-2)` for `k < n` and
/// `(-1)^(n-1) q^(-2(n-1)) [2]_q` for `k = n`.
pub fn b_coeff(n: i64, k: i64) -> Result<QRat> {
    if n < 1 || k < 1 || k > n {
        return Err(QavError::OutOfRange(format!("b_coeff needs 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let sign = if (n - 1) % 2 == 0 { QRat::one() } else { -QRat::one() };
    let tail = if k < n { QRat::q_pow(2) - QRat::q_pow(-2) } else { qint_signed(2) };
    Ok(&(&sign * &QRat::q_pow(-2 * (k - 1))) * &tail)
}

/// Root vectors up to `max_n`, all stored in normal form against one basis.
#[derive(Clone, Debug)]
pub struct RootTable {
    pub max_n: usize,
    pub basis: Arc<RewriteBasis>,
    pub letters: UqLetters,
    /// `T1 Phi`
    pub t1phi: GenImageMap,
    /// `(T1 Phi)^-1 = Phi T1^-1`
    pub t1phi_inv: GenImageMap,
    /// `T2^-1 Phi`
    pub t2inv_phi: GenImageMap,
    pub omega: GenImageMap,
    pub t1_inverse: BraidInverse,
    pub t2_inverse: BraidInverse,
    entries: BTreeMap<(Family, usize), NCPoly>,
}

impl RootTable {
    /// Builds every family for `n <= max_n`.
    pub fn build(p: &Presentation, basis: Arc<RewriteBasis>, max_n: usize) -> Result<RootTable> {
        let b = basis.as_ref();
        let letters = UqLetters::of(&p.alphabet);
        let ph = phi(p);
        let t1_inverse = solve_braid_inverse(p, b, 1)?;
        let t2_inverse = solve_braid_inverse(p, b, 2)?;
        for inv in [&t1_inverse, &t2_inverse] {
            if !inv.certified() {
                return Err(QavError::OutOfRange(format!("{} failed its certificate", inv.map.name)));
            }
        }
        let t1phi = GenImageMap::compose(&braid(p, 1), &ph, Some(b))?;
        let t1phi_inv = GenImageMap::compose(&ph, &t1_inverse.map, Some(b))?;
        let t2inv_phi = GenImageMap::compose(&t2_inverse.map, &ph, Some(b))?;
        let mut t = RootTable {
            max_n,
            basis,
            letters,
            t1phi,
            t1phi_inv,
            t2inv_phi,
            omega: omega(p),
            t1_inverse,
            t2_inverse,
            entries: BTreeMap::new(),
        };
        t.fill()?;
        Ok(t)
    }

    fn fill(&mut self) -> Result<()> {
        let b = self.basis.clone();
        let l = self.letters;
        let (e1, e2, f1) = (NCPoly::gen(l.e[0]), NCPoly::gen(l.e[1]), NCPoly::gen(l.f[0]));
        let mut x1 = e1.clone();
        let mut x2 = e2;
        for n in 0..=self.max_n {
            if n > 0 {
                x1 = self.t1phi.apply_reduced(&x1, &b)?;
                x2 = self.t2inv_phi.apply_reduced(&x2, &b)?;
            }
            let f1n = self.omega.apply_reduced(&x1, &b)?;
            let f2n = self.omega.apply_reduced(&x2, &b)?;
            self.entries.insert((Family::Ealpha1, n), x1.clone());
            self.entries.insert((Family::Ealpha2, n), x2.clone());
            self.entries.insert((Family::Falpha1, n), f1n);
            self.entries.insert((Family::Falpha2, n), f2n);
        }
        for n in 1..=self.max_n {
            let s = if n % 2 == 0 { QRat::one() } else { -QRat::one() };
            let ea2 = &self.entries[&(Family::Ealpha2, n - 1)];
            let fa2 = &self.entries[&(Family::Falpha2, n - 1)];
            let mut ed = b.mul_reduced(&e1, ea2);
            ed.add_assign_scaled(&b.mul_reduced(ea2, &e1), &(&s * &QRat::q_pow(-2)));
            let mut fd = b.mul_reduced(fa2, &f1);
            fd.add_assign_scaled(&b.mul_reduced(&f1, fa2), &(&s * &QRat::q_pow(2)));
            self.entries.insert((Family::Edelta, n), ed);
            self.entries.insert((Family::Fdelta, n), fd);
        }
        for n in 1..=self.max_n as i64 {
            let c = &q_minus_qinv() * &QRat::ratio(1, n);
            let mut plus = b.mul_reduced(&self.kk(n), self.get(Family::Edelta, n as usize)?);
            let mut minus = b.mul_reduced(self.get(Family::Fdelta, n as usize)?, &self.kk(-n));
            for r in 1..n {
                let rr = QRat::from_int(r);
                let tp = b.product(&[
                    &self.kk(n - r),
                    self.get(Family::Edelta, (n - r) as usize)?,
                    self.get(Family::PsiA, r as usize)?,
                ]);
                plus.add_assign_scaled(&tp, &-(&c * &rr));
                let tm = b.product(&[
                    self.get(Family::PsiAneg, r as usize)?,
                    self.get(Family::Fdelta, (n - r) as usize)?,
                    &self.kk(r - n),
                ]);
                minus.add_assign_scaled(&tm, &(&c * &rr));
            }
            self.entries.insert((Family::PsiA, n as usize), plus);
            self.entries.insert((Family::PsiAneg, n as usize), minus);
        }
        Ok(())
    }

    /// `(k1 k2)^n`
    pub fn kk(&self, n: i64) -> NCPoly {
        k_monomial(&self.letters, n, n)
    }

    pub fn get(&self, family: Family, n: usize) -> Result<&NCPoly> {
        if n < family.first() {
            return Err(QavError::OutOfRange(format!("{} starts at n = {}", family.name(), family.first())));
        }
        self.entries.get(&(family, n)).ok_or_else(|| {
            QavError::OutOfRange(format!("{}({n}) exceeds the table size {}", family.name(), self.max_n))
        })
    }

    pub fn real_root(&self, n: usize, i: usize, sign: Sign) -> Result<&NCPoly> {
        let f = match (i, sign) {
            (1, Sign::E) => Family::Ealpha1,
            (2, Sign::E) => Family::Ealpha2,
            (1, Sign::F) => Family::Falpha1,
            (2, Sign::F) => Family::Falpha2,
            _ => return Err(QavError::OutOfRange(format!("simple root index must be 1 or 2, got {i}"))),
        };
        self.get(f, n)
    }

    pub fn imag_root(&self, n: usize, sign: Sign) -> Result<&NCPoly> {
        self.get(if sign == Sign::E { Family::Edelta } else { Family::Fdelta }, n)
    }

    /// Image of `a(n)` for nonzero `n`.
    pub fn psi_a(&self, n: i64) -> Result<&NCPoly> {
        match n {
            0 => Err(QavError::OutOfRange("a(0) is not a generator".into())),
            n if n > 0 => self.get(Family::PsiA, n as usize),
            n => self.get(Family::PsiAneg, n.unsigned_abs() as usize),
        }
    }

    /// `m^n(seed)`, reduced after every application.
    pub fn iterate(&self, m: &GenImageMap, seed: &NCPoly, n: usize) -> Result<NCPoly> {
        let mut x = self.basis.reduce(seed);
        for _ in 0..n {
            x = m.apply_reduced(&x, &self.basis)?;
        }
        Ok(x)
    }

    /// `(T1 Phi)^n(seed)` for any integer `n`.
    pub fn t1phi_pow(&self, n: i64, seed: &NCPoly) -> Result<NCPoly> {
        let m = if n >= 0 { &self.t1phi } else { &self.t1phi_inv };
        self.iterate(m, seed, n.unsigned_abs() as usize)
    }

    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        self.basis.reduce(p)
    }

    /// Product of normal forms, reduced.
    pub fn prod(&self, factors: &[&NCPoly]) -> NCPoly {
        self.basis.product(factors)
    }
}
