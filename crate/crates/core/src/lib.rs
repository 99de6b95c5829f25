//! Numerical laboratory for ζ-factorization formulas on a Jacob's ladder.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN-rejecting guards.

pub mod crossbreed;
pub mod error;
pub mod factorize;
pub mod ladder;
pub mod numerics;
pub mod report;
pub mod zeta_eval;

pub use error::{Error, Result};
