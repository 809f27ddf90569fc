//! Shared inputs for the benchmarks.

use qav_core::expr::parse_poly;
use qav_core::{build_uq, complete, NCPoly, Presentation, RewriteBasis};

/// The Chevalley presentation with a basis completed to `degree`.
pub fn uq_with_basis(degree: usize) -> (Presentation, RewriteBasis) {
    let p = build_uq();
    let b = complete(&p, degree).expect("completion within the default budget");
    (p, b)
}

/// A product that straightens through every relation family.
pub fn sample_word(p: &Presentation) -> NCPoly {
    parse_poly("f1*e2*k1*e1*f2*k2^-1*e1*f1*e2", &p.alphabet).expect("well-formed")
}
