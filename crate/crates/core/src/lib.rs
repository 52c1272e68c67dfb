//! Generalized k-Bessel functions: the k-gamma family, certified power
//! series for `W_{k,ν,c}^{γ,λ}` and its relatives, and numerical checks of
//! monotonicity and log-convexity claims for the modified function.

// `!(a >= b)` is used on purpose so that NaN fails the precondition.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
mod error;
pub mod inequalities;
pub mod kgamma;
pub mod quadrature;
pub mod series;
pub mod summation;

pub use error::{Error, Result};
