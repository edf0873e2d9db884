//! The named scalar families built from factorial ratios, binomials and
//! alternating signs.
//!
//! Every function accepts indices as [`Idx`]: either a concrete integer or
//! `m + offset` for a single free integer `m`. With a free index the result is
//! a [`ParityExpr`] in `z` (the free index) over `ℚ(k, c_V)`; otherwise it is a
//! [`RatFunc`] that is constant in `z` (though it may still involve `k`, `c_V`).
//!
//! [`direct`] recomputes the same families from plain factorials at concrete
//! points, as an independent route for cross-checks.

pub mod direct;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::kernel::{factorial, KernelError, ParityExpr, Poly, RatFunc, Rational, Var};

/// Display label of the free index in results.
pub const INDEX_SYMBOL: &str = "m";

/// An index argument: a concrete integer, or the free index plus an offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Idx {
    Int(i64),
    Sym(i64),
}

impl Idx {
    /// The free index itself.
    pub const M: Idx = Idx::Sym(0);

    pub fn plus(self, d: i64) -> Idx {
        match self {
            Idx::Int(a) => Idx::Int(a + d),
            Idx::Sym(o) => Idx::Sym(o + d),
        }
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, Idx::Sym(_))
    }

    pub fn concrete(self) -> Option<i64> {
        match self {
            Idx::Int(a) => Some(a),
            Idx::Sym(_) => None,
        }
    }

    fn add(self, other: Idx) -> Result<Idx> {
        match (self, other) {
            (Idx::Int(a), b) | (b, Idx::Int(a)) => Ok(b.plus(a)),
            _ => Err(CoeffError::TooManySymbols(format!("{self} + {other}"))),
        }
    }

    /// `self - other` when it is a concrete integer.
    fn diff(self, other: Idx) -> Option<i64> {
        match (self, other) {
            (Idx::Int(a), Idx::Int(b)) | (Idx::Sym(a), Idx::Sym(b)) => Some(a - b),
            _ => None,
        }
    }

    fn expr(self) -> ParityExpr {
        match self {
            Idx::Int(a) => konst(RatFunc::int(a)),
            Idx::Sym(o) => ParityExpr::index(INDEX_SYMBOL, o),
        }
    }

    /// `(-1)^self`.
    fn sign(self) -> ParityExpr {
        match self {
            Idx::Int(a) => konst(RatFunc::int(if a % 2 == 0 { 1 } else { -1 })),
            Idx::Sym(o) => ParityExpr::sign(INDEX_SYMBOL, o),
        }
    }
}

impl From<i64> for Idx {
    fn from(a: i64) -> Idx {
        Idx::Int(a)
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Idx::Int(a) => write!(f, "{a}"),
            Idx::Sym(0) => write!(f, "{INDEX_SYMBOL}"),
            Idx::Sym(o) if o > 0 => write!(f, "{INDEX_SYMBOL}+{o}"),
            Idx::Sym(o) => write!(f, "{INDEX_SYMBOL}{o}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("index out of domain: {0}")]
    OutOfDomain(String),
    #[error("outside derivation domain: {0}")]
    OutsideDerivation(String),
    #[error("at most one symbolic index is supported: {0}")]
    TooManySymbols(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, CoeffError>;

/// Value of a coefficient family.
#[derive(Clone, PartialEq, Eq)]
pub enum CoeffValue {
    /// All indices concrete; constant in `z`.
    Concrete(RatFunc),
    /// One free index.
    Symbolic(ParityExpr),
}

impl CoeffValue {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, CoeffValue::Symbolic(_))
    }

    /// The value as a parity-split expression (constant branches if concrete).
    pub fn to_parity(&self) -> ParityExpr {
        match self {
            CoeffValue::Concrete(r) => konst(r.clone()),
            CoeffValue::Symbolic(e) => e.clone(),
        }
    }

    /// Value at the free index `n` (ignored when concrete).
    pub fn at(&self, n: i64) -> std::result::Result<RatFunc, KernelError> {
        match self {
            CoeffValue::Concrete(r) => Ok(r.clone()),
            CoeffValue::Symbolic(e) => e.eval(n),
        }
    }

    /// The rational value, if concrete and free of `k` and `c_V`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            CoeffValue::Concrete(r) => r.constant_value(),
            CoeffValue::Symbolic(_) => None,
        }
    }
}

impl fmt::Display for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffValue::Concrete(r) => write!(f, "{r}"),
            CoeffValue::Symbolic(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Debug for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffValue({self})")
    }
}

fn konst(r: RatFunc) -> ParityExpr {
    ParityExpr::constant(INDEX_SYMBOL, r)
}

fn int(a: i64) -> ParityExpr {
    konst(RatFunc::int(a))
}

fn frac(a: i64, b: i64) -> ParityExpr {
    konst(RatFunc::constant(crate::kernel::rat(a, b)))
}

fn symbol(v: Var) -> ParityExpr {
    konst(RatFunc::var(v))
}

fn finish(e: ParityExpr, symbolic: bool) -> CoeffValue {
    if symbolic {
        CoeffValue::Symbolic(e)
    } else {
        CoeffValue::Concrete(e.even().clone())
    }
}

fn any_symbolic(ix: &[Idx]) -> bool {
    ix.iter().any(|i| i.is_symbolic())
}

fn require_positive(name: &str, ix: &[Idx]) -> Result<()> {
    for i in ix {
        if let Idx::Int(a) = i {
            if *a < 1 {
                return Err(CoeffError::OutOfDomain(format!("{name}: index {a} must be positive")));
            }
        }
    }
    if ix.iter().filter(|i| i.is_symbolic()).count() > 1 {
        return Err(CoeffError::TooManySymbols(name.to_string()));
    }
    Ok(())
}

fn div(a: &ParityExpr, b: &ParityExpr) -> Result<ParityExpr> {
    Ok(a.checked_div(b)?)
}

fn int_factorial(a: i64, what: &str) -> Result<BigInt> {
    if a < 0 {
        return Err(CoeffError::OutOfDomain(format!("{what}: factorial of {a}")));
    }
    Ok(factorial(a as u64))
}

/// `total! / ∏ parts!`, with at most one symbolic part and `total` minus
/// that part a nonnegative integer. Expands to a polynomial in the free index.
pub fn factorial_ratio(total: Idx, parts: &[Idx]) -> Result<ParityExpr> {
    let pivot = parts
        .iter()
        .position(|p| p.is_symbolic())
        .or_else(|| (0..parts.len()).max_by_key(|&i| parts[i].concrete()))
        .ok_or_else(|| CoeffError::OutOfDomain("empty factorial ratio".into()))?;
    let bottom = parts[pivot];
    let len = total
        .diff(bottom)
        .filter(|d| *d >= 0)
        .ok_or_else(|| CoeffError::OutOfDomain(format!("factorial ratio {total}!/{bottom}!")))?;
    let mut acc = int(1);
    for j in 1..=len {
        acc = &acc * &bottom.plus(j).expr();
    }
    let mut den = BigInt::from(1);
    for (i, p) in parts.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let a = p
            .concrete()
            .ok_or_else(|| CoeffError::TooManySymbols(format!("factorial ratio {total}!/{p}!")))?;
        den *= int_factorial(a, "factorial ratio")?;
    }
    Ok(acc.scale(&Rational::new(1.into(), den)))
}

/// `binom(top, i)` for concrete `i ≥ 0`, as the falling product over `i!`.
fn binom(top: Idx, i: i64) -> Result<ParityExpr> {
    let mut acc = int(1);
    for j in 1..=i {
        acc = &acc * &top.plus(j - i).expr();
    }
    Ok(acc.scale(&Rational::new(1.into(), int_factorial(i, "binomial")?)))
}

/// `(m+n-1)! / ((m-1)!(n-1)!) · binom(m+n-1+i, i)`, shared by `alpha` and `c`.
fn alpha_prefactor(m: Idx, n: Idx, i: i64) -> Result<ParityExpr> {
    let top = m.add(n)?.plus(-1);
    let ratio = factorial_ratio(top, &[m.plus(-1), n.plus(-1)])?;
    Ok(&ratio * &binom(top.plus(i), i)?)
}

fn alpha_pe(m: Idx, n: Idx, i: i64) -> Result<ParityExpr> {
    require_positive("alpha", &[m, n])?;
    let pre = alpha_prefactor(m, n, i)?;
    Ok(&pre * &div(&n.plus(-1).sign(), &n.plus(i).expr())?)
}

fn c_pe(m: Idx, n: Idx, i: i64) -> Result<ParityExpr> {
    require_positive("c", &[m, n])?;
    let pre = alpha_prefactor(m, n, i)?;
    let s = &div(&n.plus(-1).sign(), &n.plus(i).expr())? + &div(&m.plus(-1).sign(), &m.plus(i).expr())?;
    Ok(&pre * &s)
}

/// `α_{m,n;i} = (m+n-1)!/((m-1)!(n-1)!) · binom(m+n-1+i, i) · (-1)^(n-1)/(n+i)`.
pub fn alpha(m: impl Into<Idx>, n: impl Into<Idx>, i: i64) -> Result<CoeffValue> {
    let (m, n) = (m.into(), n.into());
    Ok(finish(alpha_pe(m, n, i)?, any_symbolic(&[m, n])))
}

/// `c_{m,n;i} = α_{m,n;i} + α_{n,m;i}`, written with a single prefactor.
pub fn c_coeff(m: impl Into<Idx>, n: impl Into<Idx>, i: i64) -> Result<CoeffValue> {
    let (m, n) = (m.into(), n.into());
    Ok(finish(c_pe(m, n, i)?, any_symbolic(&[m, n])))
}

fn h_weight1_pe(m: Idx, n: Idx, p: Idx) -> Result<ParityExpr> {
    require_positive("h_weight1", &[m, n, p])?;
    let total = m.add(n)?.add(p)?.plus(-1);
    let pre = factorial_ratio(total, &[m.plus(-1), n.plus(-1), p.plus(-1)])?;
    let np = n.add(p)?;
    let mp = m.add(p)?;
    let s = &(&div(&n.plus(-1).sign(), &np.expr())? + &div(&m.plus(-1).sign(), &mp.expr())?)
        + &(&div(&np.sign(), &n.plus(1).expr())? + &div(&mp.sign(), &m.plus(1).expr())?);
    Ok(&pre * &s)
}

/// The weight-one product coefficient
/// `(m+n+p-1)!/((m-1)!(n-1)!(p-1)!) · ((-1)^(n-1)/(n+p) + (-1)^(m-1)/(m+p) + (-1)^(n+p)/(n+1) + (-1)^(m+p)/(m+1))`.
pub fn h_weight1(m: impl Into<Idx>, n: impl Into<Idx>, p: impl Into<Idx>) -> Result<CoeffValue> {
    let (m, n, p) = (m.into(), n.into(), p.into());
    Ok(finish(h_weight1_pe(m, n, p)?, any_symbolic(&[m, n, p])))
}

fn beta_gamma_pe(p: Idx, q: Idx, r: Idx) -> Result<(ParityExpr, ParityExpr)> {
    require_positive("beta_gamma", &[p, q, r])?;
    let pq = p.add(q)?;
    let left = &div(&p.plus(-1).sign(), &p.expr())? + &div(&q.plus(-1).sign(), &q.expr())?;
    let right = &div(&pq.plus(-1).sign(), &pq.expr())? + &div(&r.plus(-1).sign(), &r.expr())?;
    let beta = (&left * &right).scale(&crate::kernel::rat(1, 4));
    let g = &div(&p.plus(-1).sign(), &p.add(r)?.expr())? + &div(&q.plus(-1).sign(), &q.add(r)?.expr())?;
    let gamma = g.scale(&crate::kernel::rat(-1, 2));
    Ok((beta, gamma))
}

/// The pair `(β_{p,q,r}, γ_{p,q,r})`:
/// `β = ¼((-1)^(p-1)/p + (-1)^(q-1)/q)((-1)^(p+q-1)/(p+q) + (-1)^(r-1)/r)`,
/// `γ = -½((-1)^(p-1)/(p+r) + (-1)^(q-1)/(q+r))`.
pub fn beta_gamma(p: impl Into<Idx>, q: impl Into<Idx>, r: impl Into<Idx>) -> Result<(CoeffValue, CoeffValue)> {
    let (p, q, r) = (p.into(), q.into(), r.into());
    let sym = any_symbolic(&[p, q, r]);
    let (b, g) = beta_gamma_pe(p, q, r)?;
    Ok((finish(b, sym), finish(g, sym)))
}

fn f_const_pe(m: Idx, n: Idx) -> Result<ParityExpr> {
    let mn = m.add(n)?;
    let c0 = c_pe(m.plus(-1), n.plus(-1), 0)?;
    let c1 = c_pe(m.plus(-1), n.plus(-1), 1)?;
    let lin = &n.expr() - &m.expr();
    Ok(&(&lin + &(&mn.plus(-2).expr() * &c0)) - &(&symbol(Var::K) * &c1))
}

/// `F_{m,n;k} = -m + n + (m+n-2) c_{m-1,n-1;0} - k c_{m-1,n-1;1}`, with `k` symbolic.
pub fn f_const(m: impl Into<Idx>, n: impl Into<Idx>) -> Result<CoeffValue> {
    let (m, n) = (m.into(), n.into());
    Ok(finish(f_const_pe(m, n)?, any_symbolic(&[m, n])))
}

fn shift_k(e: &ParityExpr, q: i64) -> Result<ParityExpr> {
    Ok(e.substitute(Var::K, &Poly::var_plus(Var::K, q))?)
}

fn check_q(what: &str, q: i64) -> Result<()> {
    if q < 3 {
        return Err(CoeffError::OutsideDerivation(format!("{what}: q = {q} < 3")));
    }
    Ok(())
}

fn g_const_pe(m: Idx, p: i64, q: i64) -> Result<ParityExpr> {
    check_q("g_const", q)?;
    let half = crate::kernel::rat(1, 2);
    let mp = m.plus(p);
    let mut acc = (&shift_k(&f_const_pe(m, p.into())?, q)? * &f_const_pe(mp, q.into())?).scale(&half);
    for i in 2..=q - 2 {
        let term = &(&c_pe(m.plus(-1), (p - 1).into(), i)? * &int(q + i - 1)) * &f_const_pe(mp.plus(i - 1), (q + 1 - i).into())?;
        acc = &acc - &term.scale(&half);
    }
    acc = &acc + &(&(&mp.plus(q - 2).expr() * &c_pe(m.plus(-1), (p - 1).into(), q)?) * &int(2 * q - 1));
    let central = &(&int(2) * &symbol(Var::K)) + &(&frac(q * q - 1, 12) * &symbol(Var::C));
    acc = &acc - &(&(&central * &int(q)) * &c_pe(m.plus(-1), (p - 1).into(), q + 1)?);
    Ok(acc)
}

/// `g_{m,p,q;k} = ½F_{m,p;k+q}F_{m+p,q;k} - ½Σ_{i=2}^{q-2} c_{m-1,p-1;i}(q+i-1)F_{m+p+i-1,q+1-i;k}
/// + (m+p+q-2)c_{m-1,p-1;q}(2q-1) - (2k + (q²-1)c_V/12) q c_{m-1,p-1;q+1}`.
pub fn g_const(m: impl Into<Idx>, p: i64, q: i64) -> Result<CoeffValue> {
    let m = m.into();
    Ok(finish(g_const_pe(m, p, q)?, m.is_symbolic()))
}

fn h_vir_pe(m: Idx, p: i64, q: i64) -> Result<ParityExpr> {
    check_q("h_vir", q)?;
    Ok(c_pe(m.plus(-1), (p - 1).into(), q - 1)?.scale(&Rational::from_integer((-2 * (q - 1)).into())))
}

/// `h_{m,p,q} = -2(q-1) c_{m-1,p-1;q-1}`.
pub fn h_vir(m: impl Into<Idx>, p: i64, q: i64) -> Result<CoeffValue> {
    let m = m.into();
    Ok(finish(h_vir_pe(m, p, q)?, m.is_symbolic()))
}

/// The 2×2 matrix obtained from the pairs `(p,q) = (6,3)` and `(5,4)`:
/// rows `[g(m,6,3)-g(m,3,6)+3F(m,9), h(m,6,3)-h(m,3,6)]` and
/// `[g(m,5,4)-g(m,4,5)+F(m,9), h(m,5,4)-h(m,4,5)]`.
pub fn gamma_matrix(m: impl Into<Idx>) -> Result<[[CoeffValue; 2]; 2]> {
    let m = m.into();
    let f9 = f_const_pe(m, 9.into())?;
    let g11 = &(&g_const_pe(m, 6, 3)? - &g_const_pe(m, 3, 6)?) + &(&int(3) * &f9);
    let g12 = &h_vir_pe(m, 6, 3)? - &h_vir_pe(m, 3, 6)?;
    let g21 = &(&g_const_pe(m, 5, 4)? - &g_const_pe(m, 4, 5)?) + &f9;
    let g22 = &h_vir_pe(m, 5, 4)? - &h_vir_pe(m, 4, 5)?;
    let s = m.is_symbolic();
    Ok([[finish(g11, s), finish(g12, s)], [finish(g21, s), finish(g22, s)]])
}

/// Determinant of a 2×2 matrix of coefficient values, as a parity expression.
pub fn det2(a: &[[CoeffValue; 2]; 2]) -> ParityExpr {
    &(&a[0][0].to_parity() * &a[1][1].to_parity()) - &(&a[0][1].to_parity() * &a[1][0].to_parity())
}

/// `p·c_{m,2;p} - m·c_{p,2;m}` for concrete `m, p ≥ 1`.
pub fn mixed_bracket_scalar(m: i64, p: i64) -> Result<Rational> {
    let a = c_pe(m.into(), 2.into(), p)?.scale(&Rational::from_integer(p.into()));
    let b = c_pe(p.into(), 2.into(), m)?.scale(&Rational::from_integer(m.into()));
    let d = &a - &b;
    Ok(d.eval_rational(0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use proptest::prelude::*;

    fn r(v: Result<CoeffValue>) -> Rational {
        v.unwrap().as_rational().unwrap()
    }

    fn even_poly(factors: &[i64], den: i64) -> RatFunc {
        let mut p = Poly::one();
        for f in factors {
            p = &p * &Poly::var_plus(Var::Z, *f);
        }
        RatFunc::from(p.scale(&rat(1, den)))
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(r(alpha(2, 1, 0)), rat(2, 1));
        for i in 0..4 {
            assert_eq!(r(alpha(1, 1, i)), rat(1, 1));
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(r(c_coeff(2, 2, 0)), rat(-6, 1));
        assert_eq!(r(c_coeff(2, 2, 1)), rat(-16, 1));
    }

    #[test]
    fn alpha_sum_is_c() {
        for m in 1..=6 {
            for n in 1..=6 {
                for i in 0..=6 {
                    assert_eq!(r(alpha(m, n, i)) + r(alpha(n, m, i)), r(c_coeff(m, n, i)));
                }
            }
        }
    }

    #[test]
    fn c_symmetric() {
        for m in 1..=6 {
            for n in 1..=6 {
                for i in 0..=4 {
                    assert_eq!(r(c_coeff(m, n, i)), r(c_coeff(n, m, i)));
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(alpha(0, 1, 0), Err(CoeffError::OutOfDomain(_))));
        assert!(matches!(c_coeff(2, -1, 0), Err(CoeffError::OutOfDomain(_))));
        assert!(matches!(g_const(Idx::M, 6, 2), Err(CoeffError::OutsideDerivation(_))));
        assert!(matches!(alpha(Idx::M, Idx::M, 0), Err(CoeffError::TooManySymbols(_))));
    }

    #[test]
    fn weight_one_point_values() {
        assert_eq!(r(h_weight1(4, 3, 2)), rat(-56, 1));
        assert_eq!(r(h_weight1(3, 2, 4)), rat(200, 1));
    }

    #[test]
    fn weight_one_even_branches() {
        let a = h_weight1(Idx::M, 3, 2).unwrap().to_parity();
        assert_eq!(a.even(), &-even_poly(&[6, 4, 3, 0, -3], 40));
        let b = h_weight1(3, 2, Idx::M).unwrap().to_parity();
        assert_eq!(b.even(), &even_poly(&[6, 4, 1, 0, -1], 24));
        assert_eq!(a.eval_rational(4).unwrap(), rat(-56, 1));
        assert_eq!(b.eval_rational(4).unwrap(), rat(200, 1));
    }

    #[test]
    fn beta_gamma_example() {
        let (b, g) = beta_gamma(2, 2, 2).unwrap();
        assert_eq!(b.as_rational().unwrap(), rat(3, 16));
        assert_eq!(g.as_rational().unwrap(), rat(1, 4));
    }

    #[test]
    fn beta_gamma_equal_tail_indices() {
        for q in 2..6 {
            let (b1, g1) = beta_gamma(Idx::M, q, q).unwrap();
            let (b2, g2) = beta_gamma(Idx::M, q, q).unwrap();
            assert!((&b1.to_parity() - &b2.to_parity()).is_zero());
            assert!((&g1.to_parity() - &g2.to_parity()).is_zero());
        }
    }

    #[test]
    fn f_const_example() {
        let v = f_const(3, 3).unwrap();
        let expect = &RatFunc::int(-24) + &RatFunc::from(Poly::var(Var::K).scale(&rat(16, 1)));
        assert_eq!(v, CoeffValue::Concrete(expect));
    }

    #[test]
    fn f_const_diagonal_has_no_linear_term() {
        // at m = n, F is (2m-2)c_{m-1,m-1;0} - k c_{m-1,m-1;1}
        let f = f_const(Idx::M, Idx::M).err();
        assert!(matches!(f, Some(CoeffError::TooManySymbols(_))));
        for m in 2..8 {
            let v = f_const(m, m).unwrap();
            let c0 = r(c_coeff(m - 1, m - 1, 0));
            let c1 = r(c_coeff(m - 1, m - 1, 1));
            let expect = &RatFunc::constant(c0 * Rational::from_integer((2 * m - 2).into()))
                - &RatFunc::from(Poly::var(Var::K).scale(&c1));
            assert_eq!(v, CoeffValue::Concrete(expect));
        }
    }

    #[test]
    fn h_vir_difference_two_paths() {
        let d = &h_vir(Idx::M, 5, 4).unwrap().to_parity() - &h_vir(Idx::M, 4, 5).unwrap().to_parity();
        let expect = r(c_coeff(6, 4, 3)) * rat(-6, 1) + r(c_coeff(6, 3, 4)) * rat(8, 1);
        assert_eq!(d.eval_rational(7).unwrap(), expect);
    }

    #[test]
    fn gamma_matrix_right_column_free_of_k_and_c() {
        let g = gamma_matrix(Idx::M).unwrap();
        for row in &g {
            let e = row[1].to_parity();
            for b in [e.even(), e.odd()] {
                assert!(!b.uses(Var::K) && !b.uses(Var::C));
            }
        }
        assert!(g[0][0].to_parity().even().uses(Var::K));
    }

    #[test]
    fn mixed_bracket_examples() {
        assert_eq!(mixed_bracket_scalar(3, 2).unwrap(), rat(126, 1));
        for m in 1..6 {
            assert_eq!(mixed_bracket_scalar(m, m).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn symbolic_family_shares_label() {
        let e = alpha(Idx::M, 2, 1).unwrap().to_parity();
        assert_eq!(e.symbol(), INDEX_SYMBOL);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn symbolic_matches_concrete(m0 in 1i64..40, n in 1i64..6, i in 0i64..6) {
            let s = c_coeff(Idx::M, n, i).unwrap();
            prop_assert_eq!(s.at(m0).unwrap().constant_value().unwrap(), r(c_coeff(m0, n, i)));
            let s = alpha(n, Idx::M, i).unwrap();
            prop_assert_eq!(s.at(m0).unwrap().constant_value().unwrap(), r(alpha(n, m0, i)));
        }

        #[test]
        fn symbolic_offset_matches_concrete(m0 in 3i64..40, off in -2i64..3, n in 1i64..5, p in 1i64..5) {
            let s = h_weight1(Idx::Sym(off), n, p).unwrap();
            prop_assert_eq!(s.at(m0).unwrap().constant_value().unwrap(), r(h_weight1(m0 + off, n, p)));
            let s = h_weight1(n, p, Idx::Sym(off)).unwrap();
            prop_assert_eq!(s.at(m0).unwrap().constant_value().unwrap(), r(h_weight1(n, p, m0 + off)));
        }

        #[test]
        fn f_and_g_symbolic_match_concrete(m0 in 3i64..30) {
            let f = f_const(Idx::M, 5).unwrap();
            prop_assert_eq!(f.at(m0).unwrap(), match f_const(m0, 5).unwrap() {
                CoeffValue::Concrete(v) => v,
                _ => unreachable!(),
            });
            let g = g_const(Idx::M, 4, 5).unwrap();
            prop_assert_eq!(g.at(m0).unwrap(), match g_const(m0, 4, 5).unwrap() {
                CoeffValue::Concrete(v) => v,
                _ => unreachable!(),
            });
        }
    }
}
