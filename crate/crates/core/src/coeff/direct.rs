//! Concrete-point evaluation of the coefficient families straight from
//! factorials. Shares no code with the symbolic route beyond `factorial`.
//!
//! Arguments are assumed inside the families' domains; negative factorials panic.

use num_bigint::BigInt;

use crate::kernel::{factorial, Rational};

fn fact(n: i64) -> BigInt {
    assert!(n >= 0, "factorial of negative integer {n}");
    factorial(n as u64)
}

fn q(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn sign(e: i64) -> Rational {
    q(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn over(a: i64) -> Rational {
    Rational::new(1.into(), a.into())
}

fn binom(top: i64, i: i64) -> Rational {
    Rational::new(fact(top), fact(i) * fact(top - i))
}

fn prefactor(m: i64, n: i64, i: i64) -> Rational {
    Rational::new(fact(m + n - 1), fact(m - 1) * fact(n - 1)) * binom(m + n - 1 + i, i)
}

pub fn alpha(m: i64, n: i64, i: i64) -> Rational {
    prefactor(m, n, i) * sign(n - 1) * over(n + i)
}

pub fn c_coeff(m: i64, n: i64, i: i64) -> Rational {
    prefactor(m, n, i) * (sign(n - 1) * over(n + i) + sign(m - 1) * over(m + i))
}

pub fn h_weight1(m: i64, n: i64, p: i64) -> Rational {
    let pre = Rational::new(fact(m + n + p - 1), fact(m - 1) * fact(n - 1) * fact(p - 1));
    pre * (sign(n - 1) * over(n + p) + sign(m - 1) * over(m + p) + sign(n + p) * over(n + 1) + sign(m + p) * over(m + 1))
}

pub fn beta(p: i64, qq: i64, r: i64) -> Rational {
    (sign(p - 1) * over(p) + sign(qq - 1) * over(qq)) * (sign(p + qq - 1) * over(p + qq) + sign(r - 1) * over(r)) / q(4)
}

pub fn gamma(p: i64, qq: i64, r: i64) -> Rational {
    -(sign(p - 1) * over(p + r) + sign(qq - 1) * over(qq + r)) / q(2)
}

/// `F_{m,n;k}` at a concrete `k`.
pub fn f_const(m: i64, n: i64, k: &Rational) -> Rational {
    q(n - m) + q(m + n - 2) * c_coeff(m - 1, n - 1, 0) - k * c_coeff(m - 1, n - 1, 1)
}

/// `g_{m,p,q;k}` at concrete `k` and central charge `c_v`.
pub fn g_const(m: i64, p: i64, qq: i64, k: &Rational, c_v: &Rational) -> Rational {
    let mut acc = f_const(m, p, &(k + q(qq))) * f_const(m + p, qq, k) / q(2);
    for i in 2..=qq - 2 {
        acc -= c_coeff(m - 1, p - 1, i) * q(qq + i - 1) * f_const(m + p + i - 1, qq + 1 - i, k) / q(2);
    }
    acc += q(m + p + qq - 2) * c_coeff(m - 1, p - 1, qq) * q(2 * qq - 1);
    acc -= (q(2) * k + q(qq * qq - 1) * c_v / q(12)) * q(qq) * c_coeff(m - 1, p - 1, qq + 1);
    acc
}

pub fn h_vir(m: i64, p: i64, qq: i64) -> Rational {
    q(-2 * (qq - 1)) * c_coeff(m - 1, p - 1, qq - 1)
}

/// `(m+p+1)!/((m-1)!(p-1)!) · (-1/(p+2) + (-1)^(m-1)/(m+p) + 1/(m+2) - (-1)^(p-1)/(m+p))`.
pub fn mixed_bracket_closed_form(m: i64, p: i64) -> Rational {
    let pre = Rational::new(fact(m + p + 1), fact(m - 1) * fact(p - 1));
    pre * (-over(p + 2) + sign(m - 1) * over(m + p) + over(m + 2) - sign(p - 1) * over(m + p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff;
    use crate::kernel::{rat, Poly, Var};

    #[test]
    fn agrees_with_symbolic_route() {
        for m in 1..7 {
            for n in 1..7 {
                for i in 0..5 {
                    assert_eq!(coeff::alpha(m, n, i).unwrap().as_rational().unwrap(), alpha(m, n, i));
                    assert_eq!(coeff::c_coeff(m, n, i).unwrap().as_rational().unwrap(), c_coeff(m, n, i));
                }
                for p in 1..5 {
                    assert_eq!(coeff::h_weight1(m, n, p).unwrap().as_rational().unwrap(), h_weight1(m, n, p));
                }
            }
        }
    }

    #[test]
    fn mixed_bracket_two_routes() {
        assert_eq!(mixed_bracket_closed_form(3, 2), rat(126, 1));
        for m in 1..12 {
            for p in 1..12 {
                assert_eq!(coeff::mixed_bracket_scalar(m, p).unwrap(), mixed_bracket_closed_form(m, p), "m={m} p={p}");
            }
        }
    }

    #[test]
    fn g_agrees_after_substitution() {
        let (k, c) = (rat(3, 7), rat(-5, 2));
        for m in 3..9 {
            let sym = coeff::g_const(m, 5, 4).unwrap();
            let v = sym
                .at(0)
                .unwrap()
                .substitute(Var::K, &Poly::constant(k.clone()))
                .unwrap()
                .substitute(Var::C, &Poly::constant(c.clone()))
                .unwrap();
            assert_eq!(v.constant_value().unwrap(), g_const(m, 5, 4, &k, &c));
        }
    }
}
