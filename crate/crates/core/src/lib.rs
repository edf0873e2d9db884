//! Exact computations around the S₂ tensor-square orbifold of a vertex
//! operator algebra.
//!
//! * [`kernel`]: rationals, polynomials, rational functions, parity-split expressions.
//! * [`coeff`]: the named scalar families (`alpha`, `c`, `h`, `beta`/`gamma`, `F`, `g`, ...).
//! * [`verify`]: determinant and closed-form reproduction checks.

pub mod chars;
pub mod coeff;
pub mod fock;
pub mod kernel;
pub mod orbifold;
pub mod report;
pub mod suites;
pub mod verify;

pub use coeff::{CoeffError, CoeffValue, Idx};
pub use kernel::{KernelError, ParityExpr, Poly, RatFunc, Rational, Var};
pub use report::{CheckReport, Checker, Status};
