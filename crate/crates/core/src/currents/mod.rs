//! Formal distributions in `z`, `w` with mode-algebra coefficients, and the
//! coefficientwise comparison of current relations against mode relations.

mod compare;
mod gfun;
mod kmodes;
mod series;

pub use compare::{
    basis_degenerate, compare_c_vs_d, k_modes_k2_residuals, mode_omega, omega_on_series, CoeffEntry, CoeffVerdict,
    CurrentReport, CurrentVerdict, EXPANSION, RELATIONS, RELATION_DEGREE, relation_basis,
};
pub use gfun::{g_coeffs, g_identities, GCoeffs, GIdentity, ZRat};
pub use kmodes::k_modes_from_a;
pub use series::{Bounds, Series2, Var};
