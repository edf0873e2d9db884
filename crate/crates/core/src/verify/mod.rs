//! Reproduction checks: assemble coefficient families into determinants and
//! displayed identities and compare them exactly against closed forms.

mod reference;

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coeff::{self, direct, CoeffValue, Idx};
use crate::kernel::{rat, ParityExpr, Poly, RatFunc, Rational, Var};
use crate::report::{CheckReport, Checker};

pub use reference::{f_small_at, ReferencePolynomials, GAMMA_DET_DENOMINATOR};

fn pe(v: coeff::Result<CoeffValue>) -> ParityExpr {
    v.expect("coefficient inside its domain").to_parity()
}

fn beta(p: Idx, q: i64, r: i64) -> ParityExpr {
    pe(coeff::beta_gamma(p, q, r).map(|(b, _)| b))
}

fn gamma(p: Idx, q: i64, r: i64) -> ParityExpr {
    pe(coeff::beta_gamma(p, q, r).map(|(_, g)| g))
}

/// Determinant of the 2×2 matrix of β/γ antisymmetrizations in `(q,r) = (5,2), (4,3)`.
pub fn weight1_determinant() -> ParityExpr {
    let p = Idx::M;
    let b1 = &beta(p, 5, 2) - &beta(p, 2, 5);
    let g1 = &gamma(p, 5, 2) - &gamma(p, 2, 5);
    let b2 = &beta(p, 4, 3) - &beta(p, 3, 4);
    let g2 = &gamma(p, 4, 3) - &gamma(p, 3, 4);
    (&(&b1 * &g2) - &(&g1 * &b2)).with_symbol("p")
}

fn weight1_determinant_direct(p: i64) -> Rational {
    let b1 = direct::beta(p, 5, 2) - direct::beta(p, 2, 5);
    let g1 = direct::gamma(p, 5, 2) - direct::gamma(p, 2, 5);
    let b2 = direct::beta(p, 4, 3) - direct::beta(p, 3, 4);
    let g2 = direct::gamma(p, 4, 3) - direct::gamma(p, 3, 4);
    b1 * g2 - g1 * b2
}

/// `det(gamma_matrix(m))` with `m` free; computed once per process.
pub fn gamma_determinant() -> &'static ParityExpr {
    static DET: OnceLock<ParityExpr> = OnceLock::new();
    DET.get_or_init(|| coeff::det2(&coeff::gamma_matrix(Idx::M).expect("gamma matrix")))
}

/// The same determinant at a concrete point, through the factorial route.
pub fn gamma_determinant_direct(m: i64, k: &Rational, c_v: &Rational) -> Rational {
    let f9 = direct::f_const(m, 9, k);
    let g11 = direct::g_const(m, 6, 3, k, c_v) - direct::g_const(m, 3, 6, k, c_v) + Rational::from_integer(3.into()) * &f9;
    let g12 = direct::h_vir(m, 6, 3) - direct::h_vir(m, 3, 6);
    let g21 = direct::g_const(m, 5, 4, k, c_v) - direct::g_const(m, 4, 5, k, c_v) + f9;
    let g22 = direct::h_vir(m, 5, 4) - direct::h_vir(m, 4, 5);
    g11 * g22 - g12 * g21
}

fn specialize(p: &Poly, k: &Rational, c_v: &Rational) -> Rational {
    p.eval(Var::K, k).eval(Var::C, c_v).constant_value().expect("only k and c_V remain")
}

fn specialize_rf(r: &RatFunc, k: &Rational, c_v: &Rational) -> Rational {
    r.substitute(Var::K, &Poly::constant(k.clone()))
        .and_then(|r| r.substitute(Var::C, &Poly::constant(c_v.clone())))
        .ok()
        .and_then(|r| r.constant_value())
        .expect("only k and c_V remain")
}

const SAMPLE_POINTS: [(i64, i64, i64, i64); 2] = [(3, 7, -5, 2), (-2, 1, 1, 3)];

fn samples() -> impl Iterator<Item = (Rational, Rational)> {
    SAMPLE_POINTS.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
}

fn branch_witness(d: &ParityExpr) -> String {
    let mut parts = Vec::new();
    if !d.even().is_zero() {
        parts.push(format!("even branch difference {}", d.even()));
    }
    if !d.odd().is_zero() {
        parts.push(format!("odd branch difference {}", d.odd()));
    }
    parts.join("; ")
}

/// β/γ determinant against `(-1)^p f(p) / (210p(p+2)(p+3)(p+4)(p+5))`, plus
/// nonvanishing of `f` on `7..=100` and a concrete-point cross-check.
pub fn verify_det_weight1() -> CheckReport {
    let mut ck = Checker::new("weight1_determinant");
    let refs = ReferencePolynomials::new();
    let det = weight1_determinant();
    let expected = refs.weight1_determinant();
    let diff = &det - &expected;
    ck.expect("determinant equals the closed form on both parities", diff.is_zero(), || branch_witness(&diff));
    let zero_at: Vec<i64> = (7..=100).filter(|&p| f_small_at(p) == 0).collect();
    ck.expect("f(p) != 0 for 7 <= p <= 100", zero_at.is_empty(), || format!("f vanishes at {zero_at:?}"));
    for p in [7, 8] {
        let sym = det.eval_rational(p).expect("no pole");
        let dir = weight1_determinant_direct(p);
        ck.expect(&format!("symbolic and factorial routes agree at p = {p}"), sym == dir, || format!("{sym} vs {dir}"));
    }
    let f7 = refs.f_small.eval_rational(7).expect("polynomial");
    ck.expect("f(7) = 29274 by both evaluations", f7 == rat(f_small_at(7), 1) && f_small_at(7) == 29274, || f7.to_string());
    ck.note(format!("determinant at p = 7: {}", det.eval_rational(7).expect("no pole")));
    ck.finish()
}

/// The β/γ determinant against the closed form with the opposite overall sign.
pub fn verify_det_weight1_opposite_sign() -> CheckReport {
    let mut ck = Checker::new("weight1_determinant_opposite_sign");
    let det = weight1_determinant();
    let flipped = -ReferencePolynomials::new().weight1_determinant();
    let diff = &det - &flipped;
    ck.expect("determinant equals (-1)^(p-1) f(p) / (210p(p+2)(p+3)(p+4)(p+5))", diff.is_zero(), || branch_witness(&diff));
    ck.finish()
}

fn check_gamma_against(ck: &mut Checker, expected: &ParityExpr) {
    let det = gamma_determinant();
    ck.expect("even branch is a polynomial", det.even().is_polynomial(), || det.even().den().to_string());
    ck.expect("odd branch is a polynomial", det.odd().is_polynomial(), || det.odd().den().to_string());
    let diff = det - expected;
    ck.expect("even branch equals the even reference", diff.even().is_zero(), || diff.even().to_string());
    ck.expect("odd branch equals the odd reference", diff.odd().is_zero(), || diff.odd().to_string());
}

/// `det(gamma_matrix(m))` against the printed even/odd polynomials, with
/// factored-form point checks at `m = 10, 11`.
pub fn verify_gamma_determinant() -> CheckReport {
    let mut ck = Checker::new("gamma_determinant");
    let refs = ReferencePolynomials::new();
    check_gamma_against(&mut ck, &refs.gamma_determinant());
    let det = gamma_determinant();
    for m in [10, 11] {
        let at = det.eval(m).expect("polynomial");
        for (k, c) in samples() {
            let sym = specialize_rf(&at, &k, &c);
            let dir = gamma_determinant_direct(m, &k, &c);
            ck.expect(&format!("symbolic and factorial routes agree at m = {m}, k = {k}, c_V = {c}"), sym == dir, || {
                format!("{sym} vs {dir}")
            });
            let printed = specialize(&refs.eval_factored(m), &k, &c);
            ck.expect(&format!("factored reference matches at m = {m}, k = {k}, c_V = {c}"), printed == dir, || {
                format!("reference {printed} vs computed {dir}")
            });
        }
    }
    ck.finish()
}

/// Same as [`verify_gamma_determinant`] with the odd polynomial's `z⁴` bracket read as
/// `(-1595916 - 916090c_V - 24431554k + 20694870k²)`.
pub fn verify_gamma_determinant_regrouped() -> CheckReport {
    let mut ck = Checker::new("gamma_determinant_regrouped");
    let refs = ReferencePolynomials::new();
    check_gamma_against(&mut ck, &refs.gamma_determinant_regrouped());
    for (k, c) in samples() {
        let printed = specialize(&refs.eval_factored_regrouped(11), &k, &c);
        let dir = gamma_determinant_direct(11, &k, &c);
        ck.expect(&format!("regrouped factored form matches at m = 11, k = {k}, c_V = {c}"), printed == dir, || {
            format!("{printed} vs {dir}")
        });
    }
    ck.finish()
}

/// Both determinant branches are polynomials of degree 16 in `m` with top
/// coefficient `16k/952560`.
pub fn verify_leading_terms() -> CheckReport {
    let mut ck = Checker::new("gamma_determinant_leading_terms");
    let det = gamma_determinant();
    let lead = Poly::var(Var::K).scale(&rat(16, GAMMA_DET_DENOMINATOR));
    for (name, b) in [("even", det.even()), ("odd", det.odd())] {
        let Some(p) = b.as_poly() else {
            ck.expect(&format!("{name} branch is a polynomial"), false, || b.den().to_string());
            continue;
        };
        let cz = p.coeffs_in(Var::Z);
        ck.expect(&format!("{name} branch has degree 16 in m"), cz.len() == 17, || format!("degree {}", cz.len() - 1));
        let top = cz.last().cloned().unwrap_or_default();
        ck.expect(&format!("{name} branch leading coefficient is 16k/952560"), top == lead, || top.to_string());
    }
    ck.finish()
}

/// Integer roots of a univariate polynomial in `z` with rational coefficients.
pub fn integer_roots(p: &Poly) -> Vec<i64> {
    assert!(!p.uses(Var::K) && !p.uses(Var::C), "univariate in z");
    if p.is_zero() {
        return Vec::new();
    }
    let coeffs: Vec<Rational> = p.coeffs_in(Var::Z).iter().map(|c| c.constant_value().unwrap_or_default()).collect();
    let lcm = coeffs.iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(0);
    }
    let trailing = ints[low].abs().to_i64().expect("trailing coefficient fits in i64");
    let mut d = 1i64;
    while d * d <= trailing {
        if trailing % d == 0 {
            for cand in [d, trailing / d] {
                for r in [cand, -cand] {
                    if !roots.contains(&r) && p.eval(Var::Z, &rat(r, 1)).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        d += 1;
    }
    roots.sort_unstable();
    roots
}

fn linear_product(shifts: &[i64], den: i64) -> Poly {
    let mut p = Poly::one();
    for s in shifts {
        p = &p * &Poly::var_plus(Var::Z, *s);
    }
    p.scale(&rat(1, den))
}

/// Even-branch closed forms of `h_weight1(m,3,2)` and `h_weight1(3,2,m)`, the
/// `m = 4` point values, distinctness of the resulting coefficients, and the
/// two-route definition of `h_weight1`.
pub fn verify_weight1_product_coefficients() -> CheckReport {
    let mut ck = Checker::new("weight1_product_coefficients");
    let h1 = pe(coeff::h_weight1(Idx::M, 3, 2));
    let h2 = pe(coeff::h_weight1(3, 2, Idx::M));
    let r1 = linear_product(&[6, 4, 3, 0, -3], 40);
    let r2 = linear_product(&[6, 4, 1, 0, -1], 24);
    let e1 = RatFunc::from(-&r1);
    let e2 = RatFunc::from(r2.clone());
    ck.expect("h(m,3,2) = -(m+6)(m+4)(m+3)m(m-3)/40 for even m", h1.even() == &e1, || (h1.even() - &e1).to_string());
    ck.expect("h(3,2,m) = (m+6)(m+4)(m+1)m(m-1)/24 for even m", h2.even() == &e2, || (h2.even() - &e2).to_string());
    let p1 = coeff::h_weight1(4, 3, 2).ok().and_then(|v| v.as_rational());
    let p2 = coeff::h_weight1(3, 2, 4).ok().and_then(|v| v.as_rational());
    ck.expect("h(4,3,2) = -56 and h(3,2,4) = 200", p1 == Some(rat(-56, 1)) && p2 == Some(rat(200, 1)), || {
        format!("{p1:?}, {p2:?}")
    });
    ck.expect("symbolic branches agree with point values at m = 4", {
        h1.eval_rational(4).ok() == p1 && h2.eval_rational(4).ok() == p2
    }, || "branch evaluation differs".into());
    // coefficients of the (m+5)-mode term after moving h to the right side
    let diff = &r1 + &r2;
    let roots = integer_roots(&diff);
    let bad: Vec<i64> = roots.iter().copied().filter(|r| *r >= 4 && r % 2 == 0).collect();
    ck.expect("the two right-hand coefficients differ for every even m >= 4", bad.is_empty(), || format!("common values at {bad:?}"));
    ck.note(format!("integer roots of their difference: {roots:?}"));
    let mut mismatches = Vec::new();
    for m in 1..=6 {
        for n in 1..=6 {
            for p in 1..=6 {
                // p c_{m,n;p} + (-1)^(p-1) c_{m,n;1} binom(m+n+p-1, p-1)
                let sign = if (p - 1) % 2 == 0 { 1 } else { -1 };
                let binom = Rational::from_integer(crate::kernel::binomial(m + n + p - 1, (p - 1) as u64));
                let alt = rat(p, 1) * direct::c_coeff(m, n, p) + rat(sign, 1) * direct::c_coeff(m, n, 1) * binom;
                let closed = coeff::h_weight1(m, n, p).ok().and_then(|v| v.as_rational());
                if closed != Some(alt.clone()) {
                    mismatches.push((m, n, p));
                }
            }
        }
    }
    ck.expect("h(m,n,p) = p c(m,n,p) + (-1)^(p-1) c(m,n,1) binom(m+n+p-1,p-1) on 1..=6", mismatches.is_empty(), || {
        format!("{mismatches:?}")
    });
    ck.finish()
}

/// Rebuilds the triple-product coefficients from the `c` family and the
/// two-factor reduction `-c_{p,q;0}/2`, and compares with β/γ scaled by
/// `(p+q+r-1)!/((p-1)!(q-1)!(r-1)!)`.
pub fn verify_triple_product_coefficients() -> CheckReport {
    let mut ck = Checker::new("triple_product_coefficients");
    let p = Idx::M;
    let mut failures = Vec::new();
    for q in 2..=6i64 {
        for r in 2..=6i64 {
            let pre = coeff::factorial_ratio(p.plus(q + r - 1), &[p.plus(-1), Idx::Int(q - 1), Idx::Int(r - 1)])
                .expect("factorial ratio");
            let reduce_pq = pe(coeff::c_coeff(p, q, 0)).scale(&rat(-1, 2));
            let reduce_pqr = pe(coeff::c_coeff(p.plus(q), r, 0)).scale(&rat(-1, 2));
            let assembled_beta = &reduce_pq * &reduce_pqr;
            let assembled_gamma = pe(coeff::c_coeff(p, q, r)).scale(&rat(-r, 2));
            let shown_beta = &pre * &beta(p, q, r);
            let shown_gamma = &pre * &gamma(p, q, r);
            if assembled_beta != shown_beta {
                failures.push(format!("beta (q,r)=({q},{r}): {}", branch_witness(&(&assembled_beta - &shown_beta))));
            }
            if assembled_gamma != shown_gamma {
                failures.push(format!("gamma (q,r)=({q},{r}): {}", branch_witness(&(&assembled_gamma - &shown_gamma))));
            }
            for p0 in [7, 8] {
                let pre0 = Rational::new(
                    crate::kernel::factorial((p0 + q + r - 1) as u64),
                    crate::kernel::factorial((p0 - 1) as u64)
                        * crate::kernel::factorial((q - 1) as u64)
                        * crate::kernel::factorial((r - 1) as u64),
                );
                let b = direct::c_coeff(p0, q, 0) * direct::c_coeff(p0 + q, r, 0) / rat(4, 1);
                let g = -direct::c_coeff(p0, q, r) * rat(r, 2);
                if shown_beta.eval_rational(p0).ok() != Some(&pre0 * direct::beta(p0, q, r)) || b != &pre0 * direct::beta(p0, q, r) {
                    failures.push(format!("beta point p={p0} (q,r)=({q},{r})"));
                }
                if shown_gamma.eval_rational(p0).ok() != Some(&pre0 * direct::gamma(p0, q, r)) || g != &pre0 * direct::gamma(p0, q, r) {
                    failures.push(format!("gamma point p={p0} (q,r)=({q},{r})"));
                }
            }
        }
    }
    ck.expect("assembled and displayed forms agree for 2 <= q,r <= 6 symbolically and at p = 7, 8", failures.is_empty(), || {
        failures.join(", ")
    });
    for q in 2..=6 {
        let db = &beta(p, q, q) - &beta(p, q, q);
        ck.expect(&format!("beta/gamma antisymmetrization vanishes at q = r = {q}"), db.is_zero(), || db.to_string());
    }
    ck.finish()
}

/// `F`, `g`, `h` and the γ-matrix entries against their defining displays.
pub fn verify_f_g_h_assembly() -> CheckReport {
    let mut ck = Checker::new("virasoro_coefficient_assembly");
    let m = Idx::M;
    let k = ParityExpr::constant("m", RatFunc::var(Var::K));
    let f33 = coeff::f_const(3, 3).ok();
    let expect33 = RatFunc::from(&Poly::int(-24) + &Poly::var(Var::K).scale(&rat(16, 1)));
    ck.expect("F(3,3) = -24 + 16k", f33 == Some(CoeffValue::Concrete(expect33)), || format!("{f33:?}"));
    let mut bad = Vec::new();
    for n in 3..=9 {
        let lin = &pe(Ok(CoeffValue::Concrete(RatFunc::int(n)))) - &ParityExpr::index("m", 0);
        let c0 = pe(coeff::c_coeff(m.plus(-1), n - 1, 0));
        let c1 = pe(coeff::c_coeff(m.plus(-1), n - 1, 1));
        let scale = ParityExpr::index("m", n - 2);
        let assembled = &(&lin + &(&scale * &c0)) - &(&k * &c1);
        if assembled != pe(coeff::f_const(m, n)) {
            bad.push(n);
        }
    }
    ck.expect("F(m,n) matches its definition for 3 <= n <= 9", bad.is_empty(), || format!("n in {bad:?}"));

    // q = 3: the inner sum is empty
    let g63 = pe(coeff::g_const(m, 6, 3));
    let half = rat(1, 2);
    let f_shift = pe(coeff::f_const(m, 6)).substitute(Var::K, &Poly::var_plus(Var::K, 3)).expect("substitution");
    let no_sum = &(&(&f_shift * &pe(coeff::f_const(m.plus(6), 3))).scale(&half)
        + &(&ParityExpr::index("m", 7) * &pe(coeff::c_coeff(m.plus(-1), 5, 3))).scale(&rat(5, 1)))
        - &(&(&k.scale(&rat(2, 1)) + &ParityExpr::constant("m", RatFunc::var(Var::C)).scale(&rat(8, 12)))
            * &pe(coeff::c_coeff(m.plus(-1), 5, 4)).scale(&rat(3, 1)));
    ck.expect("g(m,6,3) has no inner-sum terms", g63 == no_sum, || branch_witness(&(&g63 - &no_sum)));

    let gm = coeff::gamma_matrix(m).expect("gamma matrix");
    let f9 = pe(coeff::f_const(m, 9));
    let g = |p, q| pe(coeff::g_const(m, p, q));
    let h = |p, q| pe(coeff::h_vir(m, p, q));
    let defs = [
        &(&g(6, 3) - &g(3, 6)) + &f9.scale(&rat(3, 1)),
        &h(6, 3) - &h(3, 6),
        &(&g(5, 4) - &g(4, 5)) + &f9,
        &h(5, 4) - &h(4, 5),
    ];
    let entries = [&gm[0][0], &gm[0][1], &gm[1][0], &gm[1][1]];
    let all_match = entries.iter().zip(&defs).all(|(e, d)| &e.to_parity() == d);
    ck.expect("gamma-matrix entries equal their defining differences", all_match, || "entry mismatch".into());
    let free = [&gm[0][1], &gm[1][1]].iter().all(|e| {
        let p = e.to_parity();
        [p.even(), p.odd()].iter().all(|b| !b.uses(Var::K) && !b.uses(Var::C))
    });
    ck.expect("right-column entries are free of k and c_V", free, || "k or c_V present".into());
    let h_path = h(5, 4).eval_rational(7).ok().zip(h(4, 5).eval_rational(7).ok()).map(|(a, b)| a - b);
    let h_direct = rat(-6, 1) * direct::c_coeff(6, 4, 3) + rat(8, 1) * direct::c_coeff(6, 3, 4);
    ck.expect("h(m,5,4) - h(m,4,5) at m = 7 matches direct evaluation", h_path == Some(h_direct.clone()), || {
        format!("{h_path:?} vs {h_direct}")
    });
    ck.finish()
}

/// `p c_{m,2;p} - m c_{p,2;m}` on the grid `1 <= m, p <= 30`: both routes agree
/// and the value vanishes exactly on the diagonal.
pub fn verify_mixed_bracket_nonvanishing() -> CheckReport {
    let mut ck = Checker::new("nonvanishing_scalar_grid");
    ck.expect("value at (3,2) is 126", coeff::mixed_bracket_scalar(3, 2).ok() == Some(rat(126, 1)), || "wrong value".into());
    let mut disagree = Vec::new();
    let mut zeros = Vec::new();
    for m in 1..=30 {
        for p in 1..=30 {
            let a = coeff::mixed_bracket_scalar(m, p).expect("in domain");
            if a != direct::mixed_bracket_closed_form(m, p) {
                disagree.push((m, p));
            }
            if (a.is_zero()) != (m == p) {
                zeros.push((m, p));
            }
        }
    }
    ck.expect("closed form equals the c-coefficient combination", disagree.is_empty(), || format!("{disagree:?}"));
    ck.expect("zero exactly when m = p", zeros.is_empty(), || format!("{zeros:?}"));
    ck.finish()
}

/// Every symbolic reproduction check, in a fixed order.
pub fn run_all() -> Vec<CheckReport> {
    let checks: Vec<fn() -> CheckReport> = vec![
        verify_det_weight1,
        verify_det_weight1_opposite_sign,
        verify_gamma_determinant,
        verify_gamma_determinant_regrouped,
        verify_leading_terms,
        verify_weight1_product_coefficients,
        verify_triple_product_coefficients,
        verify_f_g_h_assembly,
        verify_mixed_bracket_nonvanishing,
    ];
    checks.par_iter().map(|f| f()).collect()
}
