//! Polynomials over ℚ(ζ_m) with the group action, basic invariants and
//! degreewise exact linear algebra.

mod invariants;
mod linalg;
mod poly;

pub use invariants::{coinvariant_hilbert, fundamental_invariants};
pub use linalg::{ideal_dim_in_degree, ideal_pieces, kernel, rref, span_rank, GradedSubspace};
pub use poly::{graded_dim, Monomial, Poly};
