//! Numerical engine for bilateral basic hypergeometric series and
//! bilateral Jackson integrals.
//!
//! All arithmetic is binary64 complex. Infinite sums are truncated
//! adaptively under a [`SumPolicy`]; results that come from a truncated sum
//! are returned as a [`SeriesValue`] carrying an error estimate and the
//! lattice window that was actually summed.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod jackson1d;
pub mod multidim;
pub mod qcore;
pub mod series;
mod summation;
pub mod verify;

pub use error::{QError, Result};
pub use num_complex::Complex64;
pub use qcore::{QBase, SeriesValue, SumPolicy};
