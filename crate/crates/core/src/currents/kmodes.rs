use crate::error::{QavError, Result};
use crate::freealg::{NCPoly, Word};
use crate::presentations::DrinfeldLetters;
use crate::scalars::{q_minus_qinv, QRat};

/// `exp(sum_{n>=1} x_n t^n)` truncated at `t^order`; `x[n-1]` is the
/// coefficient of `t^n`. Products keep the order in which factors appear.
pub(crate) fn exp_series(x: &[NCPoly], order: usize) -> Vec<NCPoly> {
    let mut out = vec![NCPoly::zero(); order + 1];
    out[0] = NCPoly::one();
    // power[j] = coefficient of t^j in X^n
    let mut power = out.clone();
    let mut fact = QRat::one();
    for n in 1..=order {
        let mut next = vec![NCPoly::zero(); order + 1];
        for (j, pj) in power.iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            for (i, xi) in x.iter().enumerate() {
                let e = j + i + 1;
                if e <= order {
                    next[e] = next[e].add(&pj.mul(xi));
                }
            }
        }
        power = next;
        fact = fact * QRat::from_int(n as i64);
        let c = fact.inv();
        for (o, p) in out.iter_mut().zip(&power) {
            o.add_assign_scaled(p, &c);
        }
    }
    out
}

/// Modes of `k+(z) = k2 exp((q - q^-1) sum_{l>0} a(l) z^-l)` (for `plus`)
/// or of `k-(z) = exp(-(q - q^-1) sum_{l>0} a(-l) z^l) k2^-1`.
/// Entry `m` is `k+(m)`, respectively `k-(-m)`, for `0 <= m <= order`.
pub fn k_modes_from_a(d: &DrinfeldLetters, order: i64, plus: bool) -> Result<Vec<NCPoly>> {
    if order < 0 || order > d.window.l {
        return Err(QavError::WindowTooSmall(format!(
            "k-modes up to order {order} need a-modes up to {order}, window has L = {}",
            d.window.l
        )));
    }
    let c = if plus { q_minus_qinv() } else { -q_minus_qinv() };
    let x: Vec<NCPoly> = (1..=order)
        .map(|l| {
            let a = d.a(if plus { l } else { -l }).expect("in window");
            NCPoly::gen(a).scale(&c)
        })
        .collect();
    let series = exp_series(&x, order as usize);
    let (k, side_left) = if plus { (d.k2, true) } else { (d.k2inv, false) };
    let kw = NCPoly::word(Word::letter(k));
    Ok(series
        .into_iter()
        .map(|s| if side_left { kw.mul(&s) } else { s.mul(&kw) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::presentations::{build_drinfeld, ModeWindow};

    #[test]
    fn low_modes() {
        let w = ModeWindow::new(1, 2).unwrap();
        let p = build_drinfeld(w);
        let d = DrinfeldLetters::of(&p.alphabet, w);
        let kp = k_modes_from_a(&d, 2, true).unwrap();
        let parse = |s: &str| parse_poly(s, &p.alphabet).unwrap();
        assert_eq!(kp[0], parse("k2"));
        assert_eq!(kp[1], parse("(q - q^-1)*k2*a(1)"));
        assert_eq!(kp[2], parse("k2*((q - q^-1)*a(2) + (q - q^-1)^2/2*a(1)^2)"));
        let km = k_modes_from_a(&d, 1, false).unwrap();
        assert_eq!(km[0], parse("k2^-1"));
        assert_eq!(km[1], parse("-(q - q^-1)*a(-1)*k2^-1"));
        assert!(k_modes_from_a(&d, 3, true).is_err());
    }
}
