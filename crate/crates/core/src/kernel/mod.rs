//! Exact scalar and symbolic arithmetic.
//!
//! Everything here is exact: arbitrary-precision rationals, sparse
//! polynomials in the three symbols `z`, `k`, `c_V`, rational functions
//! kept in lowest terms with a monic denominator, and [`ParityExpr`], a pair
//! of rational functions selected by the parity of an integer index.

mod parity;
mod poly;
mod ratfunc;
mod rational;

pub use parity::ParityExpr;
pub use poly::{Exponent, Poly, Var};
pub use ratfunc::RatFunc;
pub use rational::{binomial, factorial, format_rational, parse_rational, rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("evaluation at pole")]
    Pole,
    #[error("value is not a rational constant: {0}")]
    NotConstant(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
