use serde::{Deserialize, Serialize};

use crate::scalars::QRat;

/// A rational function of `z` over `Q(q)`, kept as an unreduced quotient of
/// coefficient vectors (index = power of `z`).
#[derive(Clone, Debug)]
pub struct ZRat {
    pub num: Vec<QRat>,
    pub den: Vec<QRat>,
}

fn poly_mul(a: &[QRat], b: &[QRat]) -> Vec<QRat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn trimmed(mut v: Vec<QRat>) -> Vec<QRat> {
    while v.last().is_some_and(QRat::is_zero) {
        v.pop();
    }
    v
}

impl ZRat {
    pub fn new(num: Vec<QRat>, den: Vec<QRat>) -> Self {
        let den = trimmed(den);
        assert!(!den.is_empty(), "zero denominator");
        ZRat { num: trimmed(num), den }
    }

    pub fn one() -> Self {
        ZRat::new(vec![QRat::one()], vec![QRat::one()])
    }

    /// `g+(z) = (q^2 z - 1)/(z - q^2)` for `plus`, `g-(z)` with `q^-2` otherwise.
    pub fn g(plus: bool) -> Self {
        let c = QRat::q_pow(if plus { 2 } else { -2 });
        ZRat::new(vec![-QRat::one(), c.clone()], vec![-c, QRat::one()])
    }

    pub fn mul(&self, o: &ZRat) -> ZRat {
        ZRat::new(poly_mul(&self.num, &o.num), poly_mul(&self.den, &o.den))
    }

    pub fn inv(&self) -> ZRat {
        ZRat::new(self.den.clone(), self.num.clone())
    }

    /// `z -> z^-1`, clearing the resulting negative powers.
    pub fn invert_variable(&self) -> ZRat {
        let d = self.num.len().max(self.den.len());
        let flip = |v: &[QRat]| {
            let mut out = vec![QRat::zero(); d];
            for (i, c) in v.iter().enumerate() {
                out[d - 1 - i] = c.clone();
            }
            out
        };
        ZRat::new(flip(&self.num), flip(&self.den))
    }

    /// `q -> q^-1` on every coefficient.
    pub fn bar(&self) -> ZRat {
        ZRat::new(self.num.iter().map(QRat::bar).collect(), self.den.iter().map(QRat::bar).collect())
    }

    /// Equality as rational functions: `n1 d2 = n2 d1`.
    pub fn same_function(&self, o: &ZRat) -> bool {
        let a = trimmed(poly_mul(&self.num, &o.den));
        let b = trimmed(poly_mul(&o.num, &self.den));
        a == b
    }

    /// Taylor coefficients at `z = 0` up to `z^order`; the denominator must
    /// not vanish at 0.
    pub fn taylor(&self, order: usize) -> Vec<QRat> {
        let d0 = self.den[0].clone();
        assert!(!d0.is_zero(), "pole at z = 0");
        let inv0 = d0.inv();
        let mut c: Vec<QRat> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut s = self.num.get(n).cloned().unwrap_or_else(QRat::zero);
            for k in 1..=n.min(self.den.len() - 1) {
                s -= &(&self.den[k] * &c[n - k]);
            }
            c.push(&s * &inv0);
        }
        c
    }
}

/// Taylor coefficients `c_0 .. c_N` of `g+-(z)` at `z = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GCoeffs {
    pub plus: bool,
    pub order: usize,
    pub c: Vec<QRat>,
}

impl GCoeffs {
    pub fn as_text(&self) -> Vec<String> {
        self.c.iter().map(QRat::to_string).collect()
    }
}

pub fn g_coeffs(plus: bool, order: usize) -> GCoeffs {
    GCoeffs { plus, order, c: ZRat::g(plus).taylor(order) }
}

/// One exact identity among `g+` and `g-`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GIdentity {
    pub name: String,
    pub holds: bool,
}

/// `g+ g- = 1`, `g+-(z)^-1 = g-+(z)`, `g+-(z^-1) = g-+(z)` and invariance of
/// `g+-` under `q -> q^-1, z -> z^-1`.
pub fn g_identities() -> Vec<GIdentity> {
    let (gp, gm) = (ZRat::g(true), ZRat::g(false));
    let mut out = vec![GIdentity { name: "g+(z) g-(z) = 1".into(), holds: gp.mul(&gm).same_function(&ZRat::one()) }];
    for (s, g, other) in [("+", &gp, &gm), ("-", &gm, &gp)] {
        let t = if s == "+" { "-" } else { "+" };
        out.push(GIdentity { name: format!("g{s}(z)^-1 = g{t}(z)"), holds: g.inv().same_function(other) });
        out.push(GIdentity { name: format!("g{s}(z^-1) = g{t}(z)"), holds: g.invert_variable().same_function(other) });
        out.push(GIdentity {
            name: format!("Omega(g{s}(z)) = g{s}(z)"),
            holds: g.bar().invert_variable().same_function(g),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_oracle(plus: bool, n: usize) -> QRat {
        // (c z - 1)/(z - c) = (1 - c z) c^-1 sum (z/c)^k
        let e = if plus { 2 } else { -2 };
        if n == 0 {
            return QRat::q_pow(-e);
        }
        QRat::q_pow(-e * (n as i64 + 1)) - QRat::q_pow(-e * (n as i64 - 1))
    }

    #[test]
    fn taylor_matches_geometric_series() {
        for plus in [true, false] {
            let g = g_coeffs(plus, 6);
            for (n, c) in g.c.iter().enumerate() {
                assert_eq!(c, &geometric_oracle(plus, n), "n = {n}");
            }
        }
        let g = g_coeffs(true, 2);
        let d = QRat::q_pow(2) - QRat::q_pow(-2);
        assert_eq!(g.c[0], QRat::q_pow(-2));
        assert_eq!(g.c[1], -(&QRat::q_pow(-2) * &d));
        assert_eq!(g.c[2], -(&QRat::q_pow(-4) * &d));
        assert_eq!(g_coeffs(false, 1).c[1], &QRat::q_pow(2) * &d);
    }

    #[test]
    fn identities_hold() {
        for id in g_identities() {
            assert!(id.holds, "{}", id.name);
        }
    }

    #[test]
    fn detects_a_false_identity() {
        assert!(!ZRat::g(true).same_function(&ZRat::g(false)));
    }
}
