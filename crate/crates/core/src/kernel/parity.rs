use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use super::poly::{Poly, Var};
use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::KernelError;

/// A function of one integer index given by two rational functions of `z`:
/// `even` applies at even index values, `odd` at odd ones.
///
/// Signs such as `(-1)^(m-1)` with symbolic `m` become the constant pair
/// `(-1, 1)`. The `symbol` is a display label only; arithmetic always treats
/// the index as the variable `z`.
#[derive(Clone, serde::Serialize)]
pub struct ParityExpr {
    symbol: String,
    even: RatFunc,
    odd: RatFunc,
}

impl ParityExpr {
    pub fn new(symbol: impl Into<String>, even: RatFunc, odd: RatFunc) -> ParityExpr {
        ParityExpr { symbol: symbol.into(), even, odd }
    }

    pub fn constant(symbol: impl Into<String>, value: RatFunc) -> ParityExpr {
        ParityExpr::new(symbol, value.clone(), value)
    }

    /// The index itself plus `shift`.
    pub fn index(symbol: impl Into<String>, shift: i64) -> ParityExpr {
        ParityExpr::constant(symbol, RatFunc::from(Poly::var_plus(Var::Z, shift)))
    }

    /// `(-1)^(index + offset)`.
    pub fn sign(symbol: impl Into<String>, offset: i64) -> ParityExpr {
        let s = if offset.is_even() { 1 } else { -1 };
        ParityExpr::new(symbol, RatFunc::int(s), RatFunc::int(-s))
    }

    pub fn with_symbol(mut self, symbol: impl Into<String>) -> ParityExpr {
        self.symbol = symbol.into();
        self
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn even(&self) -> &RatFunc {
        &self.even
    }

    pub fn odd(&self) -> &RatFunc {
        &self.odd
    }

    pub fn branch(&self, n: i64) -> &RatFunc {
        if n.is_even() {
            &self.even
        } else {
            &self.odd
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> ParityExpr {
        ParityExpr::new(self.symbol.clone(), f(&self.even), f(&self.odd))
    }

    fn zip(&self, other: &ParityExpr, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> ParityExpr {
        ParityExpr::new(self.symbol.clone(), f(&self.even, &other.even), f(&self.odd, &other.odd))
    }

    pub fn checked_div(&self, other: &ParityExpr) -> Result<ParityExpr, KernelError> {
        Ok(ParityExpr::new(
            self.symbol.clone(),
            self.even.checked_div(&other.even)?,
            self.odd.checked_div(&other.odd)?,
        ))
    }

    pub fn scale(&self, c: &Rational) -> ParityExpr {
        self.map(|b| b.scale(c))
    }

    /// `result(m) = self(m + s)` for every integer `m`.
    pub fn shift(&self, s: i64) -> ParityExpr {
        if s == 0 {
            return self.clone();
        }
        let arg = Poly::var_plus(Var::Z, s);
        let moved = |b: &RatFunc| b.substitute(Var::Z, &arg).expect("shifting z cannot create a pole");
        let (even_src, odd_src) = if s.is_even() { (&self.even, &self.odd) } else { (&self.odd, &self.even) };
        ParityExpr::new(self.symbol.clone(), moved(even_src), moved(odd_src))
    }

    /// Substitutes another symbol (for example `k -> k + q`) on both branches.
    pub fn substitute(&self, v: Var, value: &Poly) -> Result<ParityExpr, KernelError> {
        debug_assert!(v != Var::Z, "the index is shifted with `shift`, not substituted");
        Ok(ParityExpr::new(
            self.symbol.clone(),
            self.even.substitute(v, value)?,
            self.odd.substitute(v, value)?,
        ))
    }

    /// Value at index `n`, still a function of `k` and `c_V` if they occur.
    pub fn eval(&self, n: i64) -> Result<RatFunc, KernelError> {
        self.branch(n).eval(Var::Z, &Rational::from_integer(n.into()))
    }

    pub fn eval_rational(&self, n: i64) -> Result<Rational, KernelError> {
        let v = self.eval(n)?;
        v.constant_value().ok_or_else(|| KernelError::NotConstant(v.to_string()))
    }
}

// The symbol is a label; equality looks at the branches only.
impl PartialEq for ParityExpr {
    fn eq(&self, other: &ParityExpr) -> bool {
        self.even == other.even && self.odd == other.odd
    }
}

impl Eq for ParityExpr {}

impl<'a> Add<&'a ParityExpr> for &'a ParityExpr {
    type Output = ParityExpr;
    fn add(self, rhs: &ParityExpr) -> ParityExpr {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a ParityExpr> for &'a ParityExpr {
    type Output = ParityExpr;
    fn sub(self, rhs: &ParityExpr) -> ParityExpr {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a ParityExpr> for &'a ParityExpr {
    type Output = ParityExpr;
    fn mul(self, rhs: &ParityExpr) -> ParityExpr {
        self.zip(rhs, |a, b| a * b)
    }
}

impl Neg for &ParityExpr {
    type Output = ParityExpr;
    fn neg(self) -> ParityExpr {
        self.map(|b| -b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ParityExpr> for ParityExpr {
            type Output = ParityExpr;
            fn $m(self, rhs: ParityExpr) -> ParityExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParityExpr {
    type Output = ParityExpr;
    fn neg(self) -> ParityExpr {
        -&self
    }
}

impl fmt::Display for ParityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.even == self.odd {
            write!(f, "{}", self.even)
        } else {
            write!(f, "{{even {}: {}; odd {}: {}}}", self.symbol, self.even, self.symbol, self.odd)
        }
    }
}

impl fmt::Debug for ParityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParityExpr({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn z2() -> RatFunc {
        RatFunc::from(Poly::var(Var::Z).pow(2))
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let e = ParityExpr::new("m", z2(), RatFunc::int(3));
        assert_eq!(e.shift(0), e);
    }

    #[test]
    fn odd_shift_swaps_branches() {
        let e = ParityExpr::new("m", RatFunc::int(1), RatFunc::int(-1));
        let s = e.shift(1);
        assert_eq!(s.even(), &RatFunc::int(-1));
        assert_eq!(s.odd(), &RatFunc::int(1));
    }

    #[test]
    fn shifted_index() {
        let e = ParityExpr::index("m", 0);
        let s = e.shift(3);
        assert_eq!(s, ParityExpr::index("m", 3));
        assert_eq!(s.eval_rational(2).unwrap(), rat(5, 1));
        assert_eq!(s.eval_rational(3).unwrap(), rat(6, 1));
    }

    #[test]
    fn branch_selection() {
        let e = ParityExpr::new("z", z2(), RatFunc::zero());
        assert_eq!(e.eval_rational(4).unwrap(), rat(16, 1));
        assert_eq!(e.eval_rational(5).unwrap(), rat(0, 1));
    }

    #[test]
    fn small_f_at_two() {
        // f(p) = 630(1+s) + (308+411 s)p + 7(16+9 s)p^2 + 28p^3 + 2p^4, s = (-1)^(p-1)
        let s = ParityExpr::sign("p", -1);
        let p = ParityExpr::index("p", 0);
        let one = ParityExpr::constant("p", RatFunc::one());
        let c = |x: i64| ParityExpr::constant("p", RatFunc::int(x));
        let f = &(&(&(&(&c(630) * &(&one + &s)) + &(&(&c(308) + &(&c(411) * &s)) * &p))
            + &(&(&c(7) * &(&c(16) + &(&c(9) * &s))) * &(&p * &p)))
            + &(&c(28) * &(&p * &(&p * &p))))
            + &(&c(2) * &(&(&p * &p) * &(&p * &p)));
        assert_eq!(f.eval_rational(2).unwrap(), rat(246, 1));
        assert_eq!(f.eval_rational(7).unwrap(), rat(29274, 1));
    }

    #[test]
    fn pole_reported() {
        let e = ParityExpr::constant("m", RatFunc::new(Poly::one(), Poly::var(Var::Z)).unwrap());
        assert_eq!(e.eval(0), Err(KernelError::Pole));
    }
}
