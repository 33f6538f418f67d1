//! Combinatorial and algebraic machinery for categorical Kac-Moody actions.
//!
//! The crate is `no_std` and needs only `alloc`. Scalars are exact rationals.

#![no_std]

extern crate alloc;

pub mod cartan;
pub mod klr;
pub mod morphcalc;
pub mod paths;
pub mod qgrade;

pub use cartan::{CartanDatum, Scalar, Support, Vertex, Weight};
pub use qgrade::{DimTable, DimValue, GradedMult, LaurentInt};
