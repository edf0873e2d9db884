//! Reference closed forms, transcribed in factored form and expanded here.

use crate::kernel::{rat, ParityExpr, Poly, RatFunc, Rational, Var};

/// One bracket coefficient `sign · (a + b·c_V + c·k + d·k²)`.
type Bracket = (i64, [i64; 4]);

const F0_BRACKET: [Bracket; 12] = [
    (1, [56899584, -4403385, -14227920, -11282544]),
    (1, [145224576, -7909965, -64633644, -13107780]),
    (1, [126839664, -881615, -105966078, 11271078]),
    (1, [62454924, 6219675, -80059900, 18944100]),
    (1, [30624426, 5031670, -27016034, 3375918]),
    (1, [16640946, 1681120, -855556, -4950540]),
    (1, [6568506, 255010, 2371530, -3240846]),
    (1, [1578654, 9310, 837744, -876960]),
    (1, [219996, -1680, 139434, -123354]),
    (1, [16380, -140, 12940, -8820]),
    (1, [504, 0, 668, -252]),
    (1, [0, 0, 16, 0]),
];

const F1_BRACKET: [Bracket; 11] = [
    (1, [-5511240, 0, -67155480, 49737240]),
    (1, [-1306368, -1443330, -155914956, 114823548]),
    (1, [6621426, -2854845, -149973732, 111484800]),
    (1, [3700620, -2279410, -78378012, 60419016]),
    (-1, [1595916, -916090, -24431554, 20694870]),
    (1, [-2092860, -182980, -4652226, 4871790]),
    (1, [-800730, -12670, -512034, 830970]),
    (1, [-149688, 980, -21018, 100674]),
    (1, [-13860, 140, 2304, 7560]),
    (1, [-504, 0, 372, 252]),
    (1, [0, 0, 16, 0]),
];

/// Shifts `z + a` of the linear prefactors (with multiplicity).
const F0_ROOTS: [i64; 5] = [-1, 0, 0, 2, 5];
const F1_ROOTS: [i64; 6] = [-1, -1, 0, 1, 5, 7];

/// Common scalar denominator of both polynomials.
pub const GAMMA_DET_DENOMINATOR: i64 = 952560;

/// The `z⁴` coefficient of the odd bracket with the leading minus sign
/// applied to the constant term only.
const F1_REGROUPED_Z4: Bracket = (1, [-1595916, -916090, -24431554, 20694870]);

fn bracket_poly(b: &Bracket) -> Poly {
    let (sign, [a, c, k, k2]) = *b;
    let kk = Poly::var(Var::K);
    let p = &(&(&Poly::int(a) + &Poly::var(Var::C).scale(&rat(c, 1))) + &kk.scale(&rat(k, 1)))
        + &kk.pow(2).scale(&rat(k2, 1));
    p.scale(&rat(sign, 1))
}

/// `(1/denominator) · ∏(z + root) · Σ_i bracket_i z^i`, expanded.
fn expand_factored(roots: &[i64], bracket: &[Bracket]) -> Poly {
    let mut pre = Poly::one();
    for r in roots {
        pre = &pre * &Poly::var_plus(Var::Z, *r);
    }
    let z = Poly::var(Var::Z);
    let mut sum = Poly::zero();
    for b in bracket.iter().rev() {
        sum = &(&sum * &z) + &bracket_poly(b);
    }
    (&pre * &sum).scale(&rat(1, GAMMA_DET_DENOMINATOR))
}

/// Evaluates the factored form at `z = n` without expanding in `z`.
fn eval_factored(roots: &[i64], bracket: &[Bracket], n: i64) -> Poly {
    let mut pre = Rational::from_integer(1.into());
    for r in roots {
        pre *= Rational::from_integer((n + r).into());
    }
    let mut sum = Poly::zero();
    let mut power = Rational::from_integer(1.into());
    for b in bracket {
        sum = &sum + &bracket_poly(b).scale(&power);
        power *= Rational::from_integer(n.into());
    }
    sum.scale(&(pre * rat(1, GAMMA_DET_DENOMINATOR)))
}

/// The closed-form reference polynomials.
#[derive(Clone, Debug)]
pub struct ReferencePolynomials {
    /// Even-index determinant, as printed.
    pub f0: Poly,
    /// Odd-index determinant, as printed.
    pub f1: Poly,
    /// Odd-index determinant with the `z⁴` bracket sign read on the constant only.
    pub f1_regrouped: Poly,
    /// `630(1+s) + (308+411s)p + 7(16+9s)p² + 28p³ + 2p⁴` with `s = (-1)^(p-1)`.
    pub f_small: ParityExpr,
}

impl ReferencePolynomials {
    pub fn new() -> ReferencePolynomials {
        let mut regrouped = F1_BRACKET;
        regrouped[4] = F1_REGROUPED_Z4;
        ReferencePolynomials {
            f0: expand_factored(&F0_ROOTS, &F0_BRACKET),
            f1: expand_factored(&F1_ROOTS, &F1_BRACKET),
            f1_regrouped: expand_factored(&F1_ROOTS, &regrouped),
            f_small: f_small(),
        }
    }

    /// `f0(n)` or `f1(n)` by parity, straight from the factored form.
    pub fn eval_factored(&self, n: i64) -> Poly {
        if n % 2 == 0 {
            eval_factored(&F0_ROOTS, &F0_BRACKET, n)
        } else {
            eval_factored(&F1_ROOTS, &F1_BRACKET, n)
        }
    }

    pub fn eval_factored_regrouped(&self, n: i64) -> Poly {
        let mut regrouped = F1_BRACKET;
        regrouped[4] = F1_REGROUPED_Z4;
        eval_factored(&F1_ROOTS, &regrouped, n)
    }

    /// The printed pair as one parity expression in the determinant index.
    pub fn gamma_determinant(&self) -> ParityExpr {
        ParityExpr::new("m", RatFunc::from(self.f0.clone()), RatFunc::from(self.f1.clone()))
    }

    pub fn gamma_determinant_regrouped(&self) -> ParityExpr {
        ParityExpr::new("m", RatFunc::from(self.f0.clone()), RatFunc::from(self.f1_regrouped.clone()))
    }

    /// `(-1)^p f(p) / (210 p (p+2)(p+3)(p+4)(p+5))`.
    pub fn weight1_determinant(&self) -> ParityExpr {
        let mut den = Poly::int(210);
        for a in [0, 2, 3, 4, 5] {
            den = &den * &Poly::var_plus(Var::Z, a);
        }
        let den = ParityExpr::constant("p", RatFunc::from(den));
        let signed = &ParityExpr::sign("p", 0) * &self.f_small;
        signed.checked_div(&den).expect("nonzero denominator")
    }
}

impl Default for ReferencePolynomials {
    fn default() -> Self {
        ReferencePolynomials::new()
    }
}

fn f_small() -> ParityExpr {
    let c = |x: i64| ParityExpr::constant("p", RatFunc::int(x));
    let s = ParityExpr::sign("p", -1);
    let p = ParityExpr::index("p", 0);
    let p2 = &p * &p;
    let t0 = &c(630) * &(&c(1) + &s);
    let t1 = &(&c(308) + &(&c(411) * &s)) * &p;
    let t2 = &(&c(7) * &(&c(16) + &(&c(9) * &s))) * &p2;
    let t3 = &c(28) * &(&p2 * &p);
    let t4 = &c(2) * &(&p2 * &p2);
    &(&(&(&t0 + &t1) + &t2) + &t3) + &t4
}

/// `f(p)` computed term by term in plain integers.
pub fn f_small_at(p: i64) -> i64 {
    let s = if (p - 1) % 2 == 0 { 1 } else { -1 };
    630 * (1 + s) + (308 + 411 * s) * p + 7 * (16 + 9 * s) * p * p + 28 * p.pow(3) + 2 * p.pow(4)
}
