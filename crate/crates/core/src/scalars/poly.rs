//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients. This is the numerator/denominator carrier for [`QRat`].
//!
//! [`QRat`]: super::QRat

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in `q` over the integers, coefficients stored low degree first.
///
/// Invariant: no trailing zero coefficients (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Exactly one nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, o) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += o;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || k <= self.valuation());
        if k == 0 {
            return self.clone();
        }
        Poly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    /// Coefficient list reversed: `q^deg * p(1/q)`.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// Gcd of all coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        g
    }

    pub fn div_exact_int(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Exact division in `Z[q]`. Panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if d.is_one() {
            return self.clone();
        }
        if self.is_zero() {
            return Poly::zero();
        }
        if d.is_monomial() {
            let k = d.valuation();
            return self.shift_down(k).div_exact_int(&d.coeffs[k]);
        }
        let dl = d.lc().unwrap();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - dd;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(dl);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::from_coeffs(quot)
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let dl = d.lc().unwrap().clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - dd;
            for c in rem.iter_mut() {
                *c *= &dl;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * dc;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Poly::from_coeffs(rem)
    }

    fn primitive_part(&self) -> Poly {
        let c = self.content();
        if c.is_zero() {
            return Poly::zero();
        }
        let mut p = self.div_exact_int(&c);
        if p.lc().is_some_and(Signed::is_negative) {
            p = p.neg();
        }
        p
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading
    /// coefficient. Includes the integer content gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let cont = self.content().gcd(&other.content());
        if self.is_monomial() || other.is_monomial() {
            let k = self.valuation().min(other.valuation());
            return Poly::monomial(cont, k);
        }
        // Pull out the common power of q first; keeps the PRS small.
        let k = self.valuation().min(other.valuation());
        let mut a = self.shift_down(self.valuation()).primitive_part();
        let mut b = other.shift_down(other.valuation()).primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont).shift_up(k)
    }
}

fn normalize_sign(p: Poly) -> Poly {
    if p.lc().is_some_and(Signed::is_negative) {
        p.neg()
    } else {
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q^2 - 1)(q + 2) and (q^2 - 1)(q - 3)
        let a = Poly::from_i64s(&[-1, 0, 1]).mul(&Poly::from_i64s(&[2, 1]));
        let b = Poly::from_i64s(&[-1, 0, 1]).mul(&Poly::from_i64s(&[-3, 1]));
        assert_eq!(a.gcd(&b), Poly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_keeps_content_and_q_power() {
        let a = Poly::from_i64s(&[0, 0, 6, 6]); // 6q^2(1+q)
        let b = Poly::from_i64s(&[0, 4, 4]); // 4q(1+q)
        assert_eq!(a.gcd(&b), Poly::from_i64s(&[0, 2, 2]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = Poly::from_i64s(&[1, 0, 1]);
        let b = Poly::from_i64s(&[-2, 3, 0, 5]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
        assert_eq!(a.mul(&b).div_exact(&a), b);
    }

    #[test]
    #[should_panic]
    fn inexact_division_panics() {
        Poly::from_i64s(&[1, 1]).div_exact(&Poly::from_i64s(&[1, 0, 1]));
    }
}
