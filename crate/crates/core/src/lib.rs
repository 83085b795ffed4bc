//! Exact descent of cyclic p-gonal curves `y^p = ∏ (x − a_j)^{n_j}`.
//!
//! Given branch data over an explicit number field together with a cyclic
//! Galois context, [`descent::descend`] produces an isomorphic p-gonal model
//! whose polynomial has coefficients in an extension of the base field of
//! degree at most `2(p − 1)`, and [`descent::certify`] re-checks the result.

pub mod cli;
pub mod curve;
pub mod descent;
pub mod error;
pub mod exactfield;
pub mod exceptional;
pub mod format;
pub mod galois;
pub mod moduli;
pub mod moebius;
pub mod selftest;
