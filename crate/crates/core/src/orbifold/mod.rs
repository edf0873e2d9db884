//! The fixed points of the swap on `V ⊗ V`: symmetrization maps, exact `C₂`
//! slices and membership, and the `D(x, y)` probe.

mod c2;
mod checks;
mod echelon;
mod probe;
mod tensor;

pub use c2::{fixed_dim, residue_rank, C2Oracle, C2Slice, FactorizedC2, GenericC2, Residue};
pub use checks::{
    quartic_product_check, quartic_product_vector, phi2_derivation_rule, nested_product_reduction, nested_product_reduction_vector, phi_recursion_check,
    translate_check, triple_survivors, zero_mode_check,
};
pub use echelon::{integer_row, Echelon};
pub use probe::{d_probe, stabilization, ProbeResult, ProbeWitness, Verdict};
pub use tensor::{eta, phi2, SymTensorVector, TensorMonomial, TensorSquare, TensorVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbifoldError {
    #[error("vector is not homogeneous")]
    NotHomogeneous,
    #[error("tensor is not swap-invariant at {0}")]
    NotSymmetric(String),
    #[error("vector is not in the fixed-point subalgebra: odd component {0}")]
    NotFixed(String),
}
