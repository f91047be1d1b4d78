//! Exact computations for the complex reflection groups G(m,p,n), their
//! rational Cherednik algebras in the Dunkl representation, and the
//! finite-dimensional quotient L(triv) of the polynomial representation.

pub mod cherednik;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod lowest_weight;
pub mod multipartition;
pub mod poly_algebra;
pub mod reflection_group;

pub use error::{LabError, Result};
