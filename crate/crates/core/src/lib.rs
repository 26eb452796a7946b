//! Exact evaluation of Legendre polynomials and related sequences at
//! rational points, closed-form predictors for their p-adic valuations,
//! and tools for checking the two against each other at scale.

pub mod arith;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod polyseq;
pub mod predictors;

pub use error::{Error, Result};
