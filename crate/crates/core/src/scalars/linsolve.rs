use super::QRat;

/// Solves `A x = b` over `Q(q)` by Gaussian elimination. `rows[r]` is row
/// `r` of `A`. Returns one solution (free unknowns set to 0), or `None`
/// when the system is inconsistent.
pub fn solve_linear(rows: &[Vec<QRat>], rhs: &[QRat]) -> Option<Vec<QRat>> {
    assert_eq!(rows.len(), rhs.len());
    let n = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<QRat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n);
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let f = target[col].clone();
                for (x, y) in target.iter_mut().zip(&pivot).skip(col) {
                    *x = &*x - &(y * &f);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![QRat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_detects_inconsistency() {
        let q = QRat::q;
        // x + q y = 1 + q^2, q x - y = 0
        let a = vec![vec![QRat::one(), q()], vec![q(), -QRat::one()]];
        let b = vec![QRat::one() + q() * q(), QRat::zero()];
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(&x[0] + &(q() * x[1].clone()), b[0]);
        assert_eq!(q() * x[0].clone() - x[1].clone(), b[1]);

        let a = vec![vec![QRat::one()], vec![QRat::one()]];
        assert!(solve_linear(&a, &[QRat::one(), QRat::zero()]).is_none());
    }
}
