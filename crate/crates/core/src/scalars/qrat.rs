use std::fmt;
use std::ops::{Add, AddAssign, SubAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// An element of the rational function field `Q(q)`.
///
/// Stored as `num / den` with `num, den` in `Z[q]`, reduced so that
/// `gcd(num, den) = 1` (including integer content) and `den` has a positive
/// leading coefficient. Zero is `0 / 1`. The representation is unique, so
/// derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        QRat { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QRat { num: Poly::constant(n), den: Poly::one() }
    }

    /// `n / d` for integers.
    pub fn ratio(n: i64, d: i64) -> Self {
        QRat::new(Poly::constant(n), Poly::constant(d))
    }

    pub fn q() -> Self {
        QRat::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QRat { num: Poly::monomial(1, k as usize), den: Poly::one() }
        } else {
            QRat { num: Poly::one(), den: Poly::monomial(1, (-k) as usize) }
        }
    }

    /// Laurent polynomial `sum c_i q^(low + i)`.
    pub fn laurent(low: i64, coeffs: &[i64]) -> Self {
        let p = Poly::from_i64s(coeffs);
        if low >= 0 {
            QRat::new(p.shift_up(low as usize), Poly::one())
        } else {
            QRat::new(p, Poly::monomial(1, (-low) as usize))
        }
    }

    /// Builds and canonicalizes `num / den`. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = QRat { num, den };
        r.canonicalize();
        r
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if !self.den.is_one() {
            let g = self.num.gcd(&self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(&g);
                self.den = self.den.div_exact(&g);
            }
        }
        if self.den.lc().is_some_and(Signed::is_negative) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a power of `q` times an integer.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn inv(&self) -> QRat {
        assert!(!self.is_zero(), "inverse of zero");
        QRat::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> QRat {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> QRat {
        if self.is_zero() {
            return QRat::zero();
        }
        // p(1/q) = q^-deg * rev(p)
        let dn = self.num.degree();
        let dd = self.den.degree();
        let n = self.num.reversed();
        let d = self.den.reversed();
        // num(1/q)/den(1/q) = rev(num) q^dd / (rev(den) q^dn)
        if dd >= dn {
            QRat::new(n.shift_up(dd - dn), d)
        } else {
            QRat::new(n, d.shift_up(dn - dd))
        }
    }

    /// Substitute `q -> -q`.
    pub fn negate_q(&self) -> QRat {
        let flip = |p: &Poly| {
            Poly::from_coeffs(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                    .collect(),
            )
        };
        QRat::new(flip(&self.num), flip(&self.den))
    }

    /// Splits off the integer part of a constant. `None` unless the value
    /// is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() && self.num.degree() == 0 {
            Some(self.num.coeffs().first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Balanced Laurent view used for printing: `(num, den)` as exponent
    /// lists `(low_exponent, coeffs)` with the denominator centered around
    /// `q^0` and the common power of `q` moved to the numerator.
    pub(crate) fn balanced(&self) -> ((i64, Vec<BigInt>), (i64, Vec<BigInt>)) {
        let dv = self.den.valuation();
        let den = self.den.shift_down(dv);
        let dd = den.degree() as i64;
        // den(q) = q^s * D(q) with D centered: exponents -dd/2 .. dd - dd/2
        let shift = dd / 2;
        let nv = self.num.valuation();
        let num = self.num.shift_down(nv);
        let num_low = nv as i64 - dv as i64 - shift;
        (
            (num_low, num.coeffs().to_vec()),
            (-shift, den.coeffs().to_vec()),
        )
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

fn add_fracs(a: &QRat, b: &QRat, negate_b: bool) -> QRat {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let bn = if negate_b { b.num.neg() } else { b.num.clone() };
    if a.den == b.den {
        return QRat::new(a.num.add(&bn), a.den.clone());
    }
    // Denominators that are pure powers of q (Laurent polynomials) are the
    // common case; avoid the general gcd there.
    if a.den.is_monomial() && b.den.is_monomial() && a.den.lc().unwrap().is_one() && b.den.lc().unwrap().is_one() {
        let ka = a.den.degree();
        let kb = b.den.degree();
        let k = ka.max(kb);
        let num = a.num.shift_up(k - ka).add(&bn.shift_up(k - kb));
        return QRat::new(num, Poly::monomial(1, k));
    }
    let num = a.num.mul(&b.den).add(&bn.mul(&a.den));
    let den = a.den.mul(&b.den);
    QRat::new(num, den)
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        add_fracs(self, rhs, false)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        add_fracs(self, rhs, true)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat { num: self.num.mul(&rhs.num), den: Poly::one() };
        }
        // Cross-cancel before multiplying to keep intermediate sizes down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).mul(&rhs.num.div_exact(&g2));
        let d = self.den.div_exact(&g2).mul(&rhs.den.div_exact(&g1));
        let mut r = QRat { num: n, den: d };
        if r.den.lc().is_some_and(Signed::is_negative) {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        r
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        self * &rhs.inv()
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, rhs: &QRat) {
        *self = &*self - rhs;
    }
}

fn fmt_laurent(f: &mut fmt::Formatter<'_>, low: i64, coeffs: &[BigInt]) -> fmt::Result {
    // highest exponent first
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = low + i as i64;
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        match (e, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => fmt_qpow(f, e)?,
            (_, false) => {
                write!(f, "{mag}*")?;
                fmt_qpow(f, e)?
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn fmt_qpow(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{e}")
    }
}

fn nonzero_count(c: &[BigInt]) -> usize {
    c.iter().filter(|x| !x.is_zero()).count()
}

/// Writes a balanced Laurent polynomial, wrapping it in parentheses when it
/// has more than one term.
pub(crate) fn fmt_laurent_group(f: &mut fmt::Formatter<'_>, low: i64, coeffs: &[BigInt]) -> fmt::Result {
    if nonzero_count(coeffs) > 1 {
        write!(f, "(")?;
        fmt_laurent(f, low, coeffs)?;
        write!(f, ")")
    } else {
        fmt_laurent(f, low, coeffs)
    }
}

/// A denominator in the printing syntax, e.g. `2`, `q^2`, `(q - q^-1)`.
pub(crate) struct DenDisplay<'a>(pub i64, pub &'a [BigInt]);

impl fmt::Display for DenDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (low, c) = (self.0, self.1);
        if nonzero_count(c) == 1 {
            let i = c.iter().position(|x| !x.is_zero()).unwrap();
            let e = low + i as i64;
            if e != 0 && !c[i].is_one() {
                return write!(f, "({}*q^{})", c[i], e);
            }
        }
        fmt_laurent_group(f, low, c)
    }
}

/// A numerator Laurent polynomial.
pub(crate) struct NumDisplay<'a>(pub i64, pub &'a [BigInt]);

impl fmt::Display for NumDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_laurent(f, self.0, self.1)
    }
}

impl QRat {
    /// True when the balanced denominator is exactly 1.
    pub(crate) fn balanced_den_is_one(den: &(i64, Vec<BigInt>)) -> bool {
        den.0 == 0 && den.1.len() == 1 && den.1[0].is_one()
    }
}

impl fmt::Display for QRat {
    /// Prints in the expression syntax, e.g. `q^2 + 1 + q^-2` or
    /// `(q^2 + 1)/(q - q^-1)`. Output re-parses to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((nl, nc), (dl, dc)) = self.balanced();
        if nc.is_empty() {
            return write!(f, "0");
        }
        if QRat::balanced_den_is_one(&(dl, dc.clone())) {
            fmt_laurent(f, nl, &nc)
        } else {
            fmt_laurent_group(f, nl, &nc)?;
            write!(f, "/{}", DenDisplay(dl, &dc))
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_balanced_forms() {
        assert_eq!(QRat::q_pow(2).to_string(), "q^2");
        assert_eq!(QRat::q_pow(-1).to_string(), "q^-1");
        assert_eq!(QRat::laurent(-2, &[1, 0, 1, 0, 1]).to_string(), "q^2 + 1 + q^-2");
        let inv = (QRat::q() - QRat::q_pow(-1)).inv();
        assert_eq!(inv.to_string(), "1/(q - q^-1)");
        assert_eq!(QRat::ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(QRat::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_to_laurent() {
        // (q^3 - q^-3)/(q - q^-1) = q^2 + 1 + q^-2
        let a = QRat::q_pow(3) - QRat::q_pow(-3);
        let b = QRat::q() - QRat::q_pow(-1);
        assert_eq!(&a / &b, QRat::laurent(-2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn negative_denominator_normalized() {
        let x = QRat::new(Poly::from_i64s(&[1]), Poly::from_i64s(&[0, -1]));
        assert_eq!(x, -QRat::q_pow(-1));
        assert!(x.denom().lc().unwrap().is_positive());
    }

    #[test]
    fn bar_of_mixed_fraction() {
        let x = QRat::new(Poly::from_i64s(&[1, 2]), Poly::from_i64s(&[3, 0, 1]));
        // (1 + 2/q) / (3 + 1/q^2) = (q^2 + 2q)/(3q^2 + 1)
        let expect = QRat::new(Poly::from_i64s(&[0, 2, 1]), Poly::from_i64s(&[1, 0, 3]));
        assert_eq!(x.bar(), expect);
    }
}
