use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Poly, Var};
use super::rational::Rational;
use super::KernelError;

/// Quotient of two polynomials in lowest terms.
///
/// The denominator is monic in graded-lex order, so two equal rational
/// functions always have identical stored numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, KernelError> {
        if den.is_zero() {
            return Err(KernelError::ZeroDivisor);
        }
        Ok(RatFunc::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().expect("nonzero denominator").1.recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from(Poly::one())
    }

    pub fn int(c: i64) -> RatFunc {
        RatFunc::from(Poly::int(c))
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from(Poly::constant(c))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one_poly()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn recip(&self) -> Result<RatFunc, KernelError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, KernelError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn substitute(&self, v: Var, value: &Poly) -> Result<RatFunc, KernelError> {
        let den = self.den.substitute(v, value);
        if den.is_zero() {
            return Err(KernelError::Pole);
        }
        Ok(RatFunc::normalized(self.num.substitute(v, value), den))
    }

    pub fn eval(&self, v: Var, value: &Rational) -> Result<RatFunc, KernelError> {
        self.substitute(v, &Poly::constant(value.clone()))
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

impl From<Poly> for RatFunc {
    fn from(num: Poly) -> RatFunc {
        RatFunc { num, den: Poly::one() }
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> RatFunc {
        RatFunc::constant(c)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.is_polynomial() {
                return RatFunc { num: &self.num + &rhs.num, den: Poly::one() };
            }
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let a = rhs.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RatFunc::normalized(num, &self.den * &a)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from(&self.num * &rhs.num);
        }
        // Cross-cancel first so the final normalization sees small inputs.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").1.recip();
        RatFunc { num: (&n1 * &n2).scale(&lc), den: den.scale(&lc) }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RatFunc {
        RatFunc::var(Var::Z)
    }

    fn over(num: Poly, den: Poly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let sum = &z() + &(-&z());
        assert!(sum.is_zero());
        assert_eq!(sum, RatFunc::zero());
    }

    #[test]
    fn cancellation() {
        let a = over(Poly::one(), Poly::var_plus(Var::Z, 1));
        let b = RatFunc::from(Poly::var_plus(Var::Z, 1));
        assert_eq!(&a * &b, RatFunc::one());
    }

    #[test]
    fn cross_multiplication() {
        // 1/z + 1/(z+2) = (2z+2)/(z(z+2))
        let a = over(Poly::one(), Poly::var(Var::Z));
        let b = over(Poly::one(), Poly::var_plus(Var::Z, 2));
        let expected = over(
            &Poly::var(Var::Z).scale(&Rational::from_integer(2.into())) + &Poly::int(2),
            &Poly::var(Var::Z) * &Poly::var_plus(Var::Z, 2),
        );
        assert_eq!(&a + &b, expected);
        assert_eq!(expected.den().to_string(), "z^2 + 2*z");
    }

    #[test]
    fn zero_divisor_is_an_error() {
        assert_eq!(RatFunc::new(Poly::one(), Poly::zero()), Err(KernelError::ZeroDivisor));
        assert_eq!(z().checked_div(&RatFunc::zero()), Err(KernelError::ZeroDivisor));
    }

    #[test]
    fn pole_is_an_error() {
        let a = over(Poly::one(), Poly::var_plus(Var::Z, -3));
        assert_eq!(a.eval(Var::Z, &Rational::from_integer(3.into())), Err(KernelError::Pole));
    }

    #[test]
    fn monic_denominator() {
        let a = over(Poly::int(3), &Poly::var(Var::Z).scale(&Rational::from_integer(6.into())) + &Poly::var(Var::K));
        assert!(a.den().leading().unwrap().1.is_one());
    }
}
