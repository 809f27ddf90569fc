use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::freealg::NCPoly;
use crate::presentations::DrinfeldLetters;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Var {
    Z,
    W,
}

/// Inclusive exponent bounds; `None` is unbounded.
pub type Bounds = (Option<i64>, Option<i64>);

fn inside(b: Bounds, e: i64) -> bool {
    b.0.is_none_or(|lo| e >= lo) && b.1.is_none_or(|hi| e <= hi)
}

fn point(e: i64) -> Bounds {
    (Some(e), Some(e))
}

/// A formal distribution `sum c_{i,j} z^i w^j` known on a finite box.
///
/// Coefficients outside `zsup x wsup` are zero. Inside the support but
/// outside the box, or at a position in `margin`, the coefficient is not
/// determined by the truncated data.
#[derive(Clone, Debug)]
pub struct Series2 {
    pub zbox: (i64, i64),
    pub wbox: (i64, i64),
    pub zsup: Bounds,
    pub wsup: Bounds,
    cells: BTreeMap<(i64, i64), NCPoly>,
    margin: BTreeSet<(i64, i64)>,
}

impl Series2 {
    fn empty(zbox: (i64, i64), wbox: (i64, i64), zsup: Bounds, wsup: Bounds) -> Self {
        Series2 { zbox, wbox, zsup, wsup, cells: BTreeMap::new(), margin: BTreeSet::new() }
    }

    fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.zbox.0..=self.zbox.1).flat_map(move |i| (self.wbox.0..=self.wbox.1).map(move |j| (i, j)))
    }

    fn in_support(&self, i: i64, j: i64) -> bool {
        inside(self.zsup, i) && inside(self.wsup, j)
    }

    /// `Some(c)` when the coefficient of `z^i w^j` is determined.
    pub fn get(&self, i: i64, j: i64) -> Option<NCPoly> {
        if !self.in_support(i, j) {
            return Some(NCPoly::zero());
        }
        let in_box = (self.zbox.0..=self.zbox.1).contains(&i) && (self.wbox.0..=self.wbox.1).contains(&j);
        if !in_box || self.margin.contains(&(i, j)) {
            return None;
        }
        Some(self.cells.get(&(i, j)).cloned().unwrap_or_else(NCPoly::zero))
    }

    fn set(&mut self, i: i64, j: i64, c: Option<NCPoly>) {
        match c {
            None => {
                self.margin.insert((i, j));
            }
            Some(p) if !p.is_zero() => {
                self.cells.insert((i, j), p);
            }
            Some(_) => {}
        }
    }

    fn build(
        zbox: (i64, i64),
        wbox: (i64, i64),
        zsup: Bounds,
        wsup: Bounds,
        f: impl Fn(i64, i64) -> Option<NCPoly>,
    ) -> Series2 {
        let mut s = Series2::empty(zbox, wbox, zsup, wsup);
        let pos: Vec<_> = s.positions().collect();
        for (i, j) in pos {
            if s.in_support(i, j) {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    /// A series in one variable given by `coeff(e)` for the exponent `e` of
    /// that variable (`None` for undetermined), with support `sup`.
    pub fn single(
        var: Var,
        zbox: (i64, i64),
        wbox: (i64, i64),
        sup: Bounds,
        coeff: impl Fn(i64) -> Option<NCPoly>,
    ) -> Series2 {
        match var {
            Var::Z => Series2::build(zbox, wbox, sup, point(0), |i, _| coeff(i)),
            Var::W => Series2::build(zbox, wbox, point(0), sup, |_, j| coeff(j)),
        }
    }

    /// `x+-(v) = sum_k x+-(k) v^-k`, or `x+-(-v)` when `negate`.
    pub fn x_current(d: &DrinfeldLetters, plus: bool, var: Var, negate: bool, zbox: (i64, i64), wbox: (i64, i64)) -> Self {
        Series2::single(var, zbox, wbox, (None, None), |e| {
            let k = -e;
            let g = d.x(plus, k)?;
            let p = NCPoly::gen(g);
            Some(if negate && k % 2 != 0 { p.neg() } else { p })
        })
    }

    /// `k+(v) = sum_{m>=0} k+(m) v^-m` (`plus`) or `k-(v) = sum_{m>=0} k-(-m) v^m`;
    /// `modes[m]` holds `k+(m)` or `k-(-m)`.
    pub fn k_current(modes: &[NCPoly], plus: bool, var: Var, negate: bool, zbox: (i64, i64), wbox: (i64, i64)) -> Self {
        let sup = if plus { (None, Some(0)) } else { (Some(0), None) };
        Series2::single(var, zbox, wbox, sup, |e| {
            let m = e.unsigned_abs() as usize;
            let p = modes.get(m)?.clone();
            Some(if negate && m % 2 == 1 { p.neg() } else { p })
        })
    }

    /// `delta(gamma^g w/z) * s`, with `s` a series in `var` alone.
    pub fn delta_times(d: &DrinfeldLetters, g: i64, s: &Series2, var: Var) -> Series2 {
        let gam = |n: i64| NCPoly::word(d.gamma_pow(n));
        Series2::build(s.zbox, s.wbox, (None, None), (None, None), |i, j| {
            // delta = sum_n gamma^{g n} w^n z^-n
            let (n, e) = match var {
                Var::W => (-i, i + j),
                Var::Z => (j, i + j),
            };
            let c = match var {
                Var::W => s.get(0, e)?,
                Var::Z => s.get(e, 0)?,
            };
            Some(gam(g * n).mul(&c))
        })
    }

    /// `a(z) b(w)` (or `b(w) a(z)`): a product of single-variable series in
    /// different variables, in the order given.
    pub fn mul_separated(left: &Series2, right: &Series2) -> Series2 {
        let zsup = if left.zsup == point(0) { right.zsup } else { left.zsup };
        let wsup = if left.wsup == point(0) { right.wsup } else { left.wsup };
        Series2::build(left.zbox, left.wbox, zsup, wsup, |i, j| {
            let (li, lj, ri, rj) = if left.zsup == point(0) { (0, j, i, 0) } else { (i, 0, 0, j) };
            Some(left.get(li, lj)?.mul(&right.get(ri, rj)?))
        })
    }

    /// `sum_t c_t z^dz_t w^dw_t * s`, coefficients multiplied on the left.
    pub fn mul_poly(terms: &[(NCPoly, i64, i64)], s: &Series2) -> Series2 {
        let shift = |b: Bounds, d: &dyn Fn(&(NCPoly, i64, i64)) -> i64| -> Bounds {
            let lo = b.0.map(|x| x + terms.iter().map(d).min().unwrap_or(0));
            let hi = b.1.map(|x| x + terms.iter().map(d).max().unwrap_or(0));
            (lo, hi)
        };
        let zsup = shift(s.zsup, &|t| t.1);
        let wsup = shift(s.wsup, &|t| t.2);
        Series2::build(s.zbox, s.wbox, zsup, wsup, |i, j| {
            let mut acc = NCPoly::zero();
            for (c, dz, dw) in terms {
                acc = acc.add(&c.mul(&s.get(i - dz, j - dw)?));
            }
            Some(acc)
        })
    }

    /// `P(w/z) * s` for a power series `P(u) = sum_n coeff(n) u^n`, expanded
    /// in the region `|z| > |w|`. Defined only where the sum over `n` is
    /// finite by the support of `s`.
    pub fn mul_wz_series(coeff: &dyn Fn(usize) -> NCPoly, s: &Series2) -> Series2 {
        Series2::build(s.zbox, s.wbox, (None, s.zsup.1), (s.wsup.0, None), |i, j| {
            let by_z = s.zsup.1.map(|hi| hi - i);
            let by_w = s.wsup.0.map(|lo| j - lo);
            let top = match (by_z, by_w) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => return None,
            };
            let mut acc = NCPoly::zero();
            for n in 0..=top.max(-1) {
                acc = acc.add(&coeff(n as usize).mul(&s.get(i + n, j - n)?));
            }
            Some(acc)
        })
    }

    /// `s * c`, the coefficient multiplied on the right.
    pub fn mul_right(s: &Series2, c: &NCPoly) -> Series2 {
        Series2::build(s.zbox, s.wbox, s.zsup, s.wsup, |i, j| Some(s.get(i, j)?.mul(c)))
    }

    pub fn sub(&self, o: &Series2) -> Series2 {
        let hull = |a: Bounds, b: Bounds| -> Bounds {
            let lo = a.0.zip(b.0).map(|(x, y)| x.min(y));
            let hi = a.1.zip(b.1).map(|(x, y)| x.max(y));
            (lo, hi)
        };
        Series2::build(self.zbox, self.wbox, hull(self.zsup, o.zsup), hull(self.wsup, o.wsup), |i, j| {
            Some(self.get(i, j)?.sub(&o.get(i, j)?))
        })
    }

    /// Box positions whose coefficient is undetermined.
    pub fn margin(&self) -> impl Iterator<Item = &(i64, i64)> {
        self.margin.iter()
    }

    /// Determined nonzero coefficients.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(i64, i64), &NCPoly)> {
        self.cells.iter()
    }

    /// Every box position with its coefficient (`None` when undetermined).
    pub fn cells(&self) -> Vec<((i64, i64), Option<NCPoly>)> {
        self.positions().map(|(i, j)| ((i, j), self.get(i, j))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::k_modes_from_a;
    use crate::presentations::{build_drinfeld, ModeWindow};

    fn letters() -> (crate::presentations::Presentation, DrinfeldLetters) {
        let w = ModeWindow::new(2, 2).unwrap();
        let p = build_drinfeld(w);
        let d = DrinfeldLetters::of(&p.alphabet, w);
        (p, d)
    }

    #[test]
    fn delta_of_one_variable_is_all_ones() {
        let (_, d) = letters();
        let one = Series2::single(Var::W, (-3, 3), (-3, 3), point(0), |_| Some(NCPoly::one()));
        let s = Series2::delta_times(&d, 0, &one, Var::W);
        for ((i, j), c) in s.cells() {
            let want = if i + j == 0 { NCPoly::one() } else { NCPoly::zero() };
            assert_eq!(c, Some(want), "({i},{j})");
        }
    }

    #[test]
    fn negated_argument_flips_odd_modes() {
        let (_, d) = letters();
        let s = Series2::x_current(&d, true, Var::W, true, (0, 0), (-3, 3));
        assert_eq!(s.get(0, -1), Some(NCPoly::gen(d.x(true, 1).unwrap()).neg()));
        assert_eq!(s.get(0, -2), Some(NCPoly::gen(d.x(true, 2).unwrap())));
        assert_eq!(s.get(0, 3), None);
        assert_eq!(s.get(1, 0), Some(NCPoly::zero()));
    }

    #[test]
    fn delta_collects_k_plus_modes() {
        let (_, d) = letters();
        let kp = k_modes_from_a(&d, 2, true).unwrap();
        let k = Series2::k_current(&kp, true, Var::W, false, (-3, 3), (-3, 3));
        let s = Series2::delta_times(&d, 1, &k, Var::W);
        // z^-l w^-l' -> gamma^l k+(l + l')
        for (l, lp) in [(0, 0), (1, 0), (1, 1), (-1, 2), (2, 0)] {
            let want = NCPoly::word(d.gamma_pow(l)).mul(&kp[(l + lp) as usize]);
            assert_eq!(s.get(-l, -lp), Some(want), "l={l} l'={lp}");
        }
        assert_eq!(s.get(-1, 2), Some(NCPoly::zero()));
        assert_eq!(s.get(-2, -1), None);
    }

    #[test]
    fn series_prefactor_sum_is_finite_on_one_sided_support() {
        let (_, d) = letters();
        let kp = k_modes_from_a(&d, 2, true).unwrap();
        let k = Series2::k_current(&kp, true, Var::Z, false, (-3, 3), (-3, 3));
        let x = Series2::x_current(&d, false, Var::W, false, (-3, 3), (-3, 3));
        let s = Series2::mul_separated(&k, &x);
        // 1/(1 - u) = sum u^n
        let geo = Series2::mul_wz_series(&|_| NCPoly::one(), &s);
        let want = s.get(-1, 0).unwrap().add(&s.get(0, -1).unwrap());
        assert_eq!(geo.get(-1, 0), Some(want));
        assert_eq!(geo.get(-3, 0), None);
    }
}
