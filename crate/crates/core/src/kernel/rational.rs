use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::KernelError;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Generalized binomial `binom(top, i)` for any integer `top` and `i >= 0`.
pub fn binomial(top: i64, i: u64) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..i as i64 {
        num *= BigInt::from(top - j);
    }
    num / factorial(i)
}

/// Serializes as `p/q` (denominator always written, never decimal).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let err = || KernelError::Parse(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}
