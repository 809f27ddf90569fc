use crate::error::{QavError, Result};
use crate::freealg::NCPoly;
use crate::presentations::{DrinfeldLetters, ModeWindow, Presentation};
use crate::rootvectors::RootTable;

use super::{CoeffTwist, GenImageMap, MapKind};

/// The Drinfeld map from the mode algebra on `window` to the Chevalley
/// presentation: `gamma -> k1 k2`, `k2 -> k2`, `x+(n) -> (T1 Phi)^n(e1)`,
/// `x-(n) -> (T1 Phi)^-n(f1)` and `a(+-k)` to the recursive root-vector
/// expressions held in `roots`.
pub fn psi(drinfeld: &Presentation, uq: &Presentation, roots: &RootTable, window: ModeWindow) -> Result<GenImageMap> {
    let need = window.k.max(window.l) as usize;
    if roots.max_n < need {
        return Err(QavError::WindowTooSmall(format!(
            "root table holds n <= {} but the window needs n <= {need}",
            roots.max_n
        )));
    }
    let d = DrinfeldLetters::of(&drinfeld.alphabet, window);
    let mut m = GenImageMap::new("Psi", drinfeld, uq, MapKind::Hom, CoeffTwist::Identity);
    let name = |g| drinfeld.alphabet.name(g).to_string();
    m.set(&name(d.gam), roots.kk(1));
    m.set(&name(d.gaminv), roots.kk(-1));
    m.set(&name(d.k2), NCPoly::gen(roots.letters.k[1]));
    m.set(&name(d.k2inv), NCPoly::gen(roots.letters.kinv[1]));
    let e1 = NCPoly::gen(roots.letters.e[0]);
    let f1 = NCPoly::gen(roots.letters.f[0]);
    for k in -window.k..=window.k {
        m.set(&name(d.x(true, k).expect("in window")), roots.t1phi_pow(k, &e1)?);
        m.set(&name(d.x(false, k).expect("in window")), roots.t1phi_pow(-k, &f1)?);
    }
    for l in (-window.l..=window.l).filter(|&l| l != 0) {
        m.set(&name(d.a(l).expect("in window")), roots.psi_a(l)?.clone());
    }
    Ok(m)
}

/// The inverse map on Chevalley generators: `k1 -> gamma k2^-1`,
/// `e1 -> x+(0)`, `f1 -> x-(0)`, `f2 -> -k2 x+(-1)`, `e2 -> -x-(1) k2^-1`.
pub fn xi(uq: &Presentation, drinfeld: &Presentation) -> GenImageMap {
    let mut m = GenImageMap::new("Xi", uq, drinfeld, MapKind::Hom, CoeffTwist::Identity);
    for (g, img) in [
        ("k1", "gam*k2^-1"),
        ("k1inv", "k2*gam^-1"),
        ("k2", "k2"),
        ("k2inv", "k2^-1"),
        ("e1", "xp(0)"),
        ("f1", "xm(0)"),
        ("f2", "-k2*xp(-1)"),
        ("e2", "-xm(1)*k2^-1"),
    ] {
        m.set_expr(g, img).expect("window contains modes 0 and +-1");
    }
    m
}
