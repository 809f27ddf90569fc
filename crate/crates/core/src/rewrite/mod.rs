//! Quotient-algebra computation: monomial orders, two-sided reduction,
//! degree-truncated completion, and ideal membership.

mod basis;
mod complete;
mod order;
mod persist;

pub use basis::{Membership, RewriteBasis, RewriteRule};
pub use complete::{complete, complete_with, Budget, CompletionStats};
pub use order::{MonomialOrder, OrderKey, OrderKind};
pub use persist::{poly_from_json, poly_to_json, sha256_hex, BasisFile, CoeffJson, RuleJson, TermJson, BASIS_FILE_VERSION};

#[cfg(test)]
mod tests;
