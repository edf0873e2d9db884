//! Heisenberg and Virasoro vacuum modules with exact mode algebra and
//! `n`-th products.

pub mod cache;
mod engine;
mod identities;
mod monomial;
mod scalar;
mod vector;
mod voa;

pub use engine::Engine;
pub use identities::{
    commutativity_check, commutator_defect, associativity_check, associativity_defect, skew_symmetry_check, skew_symmetry_defect,
    skew_symmetry_extra_factorial_defect,
};
pub use monomial::{monomials_of_weight, Mode, Monomial, ParseMonomialError};
pub use scalar::Scalar;
pub use vector::FockVector;
pub use voa::{Heisenberg, Virasoro, Voa};
