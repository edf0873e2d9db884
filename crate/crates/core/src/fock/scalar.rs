use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::kernel::{format_rational, parse_rational, Poly, Rational};

/// Coefficient field of a Fock-space engine.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_integer(n: BigInt) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Single-line text form without tabs, read back by [`Scalar::decode`].
    fn encode(&self) -> String;
    fn decode(s: &str) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_integer(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    // Products in integral Gram matrices stay integral; skip the gcd there.
    fn plus(&self, rhs: &Self) -> Self {
        if self.denom().is_one() && rhs.denom().is_one() {
            Rational::from_integer(self.numer() + rhs.numer())
        } else {
            self + rhs
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.denom().is_one() && rhs.denom().is_one() {
            Rational::from_integer(self.numer() * rhs.numer())
        } else {
            self * rhs
        }
    }
    fn negate(&self) -> Self {
        -self
    }
    fn encode(&self) -> String {
        format_rational(self)
    }
    fn decode(s: &str) -> Option<Self> {
        parse_rational(s).ok()
    }
}

/// Polynomials in `c_V`: the Virasoro engine with a symbolic central charge.
impl Scalar for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_integer(n: BigInt) -> Self {
        Poly::constant(Rational::from_integer(n))
    }
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn encode(&self) -> String {
        serde_json::to_string(self).expect("polynomials serialize")
    }
    fn decode(s: &str) -> Option<Self> {
        serde_json::from_str(s).ok()
    }
}
