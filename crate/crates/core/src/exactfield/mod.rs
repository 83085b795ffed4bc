//! Exact arithmetic in number fields `Q[t]/(m(t))`: elements, automorphisms,
//! fixed subfields, and square-root adjunction.

pub mod automorphism;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod qpoly;
pub mod sqrt;
pub mod subfield;

pub use automorphism::{apply_automorphism, FieldAutomorphism};
pub use field::{elt_arith, eval_qpoly, ArithOp, FieldElement, NumberField, DEFAULT_MAX_DEGREE};
pub use qpoly::{q, qf, QPoly, Q};
pub use sqrt::{adjoin_sqrt, sqrt_in_field, Embedding, SqrtAdjunction};
pub use subfield::{check_group, fixed_field, is_fixed, is_in_subfield, SubfieldDescription};
