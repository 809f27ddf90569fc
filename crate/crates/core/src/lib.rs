//! Exact symbolic computation in a sign-twisted quantum affine `sl2`:
//! scalars in `Q(q)`, free algebras, rewriting-based normal forms, the
//! Chevalley and Drinfeld presentations, their morphisms, root vectors,
//! currents, and a catalog of verifiable identities.

pub mod currents;
pub mod error;
pub mod expr;
pub mod freealg;
pub mod morphisms;
pub mod presentations;
pub mod rewrite;
pub mod rootvectors;
pub mod scalars;
pub mod verify;

pub use error::{QavError, Result};
pub use freealg::{Alphabet, Element, GenId, NCPoly, Word};
pub use presentations::{build_drinfeld, build_uq, build_uq_tensor_square, ModeWindow, Presentation};
pub use rewrite::{complete, Membership, MonomialOrder, RewriteBasis};
pub use scalars::{Poly, QRat};
