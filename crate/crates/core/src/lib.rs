//! Exact-arithmetic q-Toda eigenfunctions of types A and B.
//!
//! Series live on the positive cones spanned by `x_{i+1}/x_i` (and `1/x_N` for
//! type B) and are truncated by cone degree. All scalars are rationals, so every
//! identity is checked by exact equality at sampled generic parameter points.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod coefficients;
pub mod eigenfunctions;
pub mod error;
pub mod operators;
pub mod scalars;
pub mod series;
pub mod verification;
