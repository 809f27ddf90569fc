//! Exact arithmetic in `Q(q)`: integer polynomials, reduced rational
//! functions, q-integers and q-factorials, and the bar involution.

mod linsolve;
mod poly;
mod qrat;

pub use linsolve::solve_linear;

pub use poly::Poly;
pub use qrat::QRat;
pub(crate) use qrat::{DenDisplay, NumDisplay};

use crate::error::{QavError, Result};

/// The q-integer `[n]_q = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn qint(n: i64) -> Result<QRat> {
    if n < 0 {
        return Err(QavError::NegativeArgument { what: "qint", value: n });
    }
    Ok(qint_signed(n))
}

/// `[n]_q` extended to all integers by `[-n]_q = -[n]_q`.
pub fn qint_signed(n: i64) -> QRat {
    if n == 0 {
        return QRat::zero();
    }
    let m = n.unsigned_abs() as usize;
    // exponents 1-m, 3-m, ..., m-1
    let mut coeffs = vec![0i64; 2 * m - 1];
    for i in (0..coeffs.len()).step_by(2) {
        coeffs[i] = if n > 0 { 1 } else { -1 };
    }
    QRat::laurent(1 - m as i64, &coeffs)
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn qfact(n: i64) -> Result<QRat> {
    if n < 0 {
        return Err(QavError::NegativeArgument { what: "qfact", value: n });
    }
    Ok((1..=n).fold(QRat::one(), |acc, k| &acc * &qint_signed(k)))
}

/// The bar involution `q -> q^-1`.
pub fn bar(x: &QRat) -> QRat {
    x.bar()
}

/// `q - q^-1`, the ubiquitous denominator.
pub fn q_minus_qinv() -> QRat {
    QRat::q() - QRat::q_pow(-1)
}
