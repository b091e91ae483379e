//! Exact-arithmetic homological algebra for finite-dimensional left Leibniz
//! algebras given by structure constants.
//!
//! The crate computes Leibniz cohomology `HL^n(h, M)` of a Leibniz algebra
//! with coefficients in a bimodule, Chevalley-Eilenberg cohomology of the
//! canonical Lie quotient, and Ext groups between finite-dimensional
//! bimodules, the latter both by a direct extension-cocycle system in degree
//! one and by assembling the E2 pages of the two change-of-rings spectral
//! sequences. All arithmetic is over the rationals and exact.

pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exactlin;
pub mod extcalc;

pub use error::Error;
pub use exactlin::{Mat, Scalar, Subspace};
