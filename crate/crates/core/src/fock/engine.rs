use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;

use super::monomial::Monomial;
use super::scalar::Scalar;
use super::vector::FockVector;
use super::voa::Voa;

type ProductKey = (Monomial, i64, Monomial);

/// Exact `n`-th products in a [`Voa`].
///
/// A monomial `a_(p) w` with leading generator mode `a_(p)` is multiplied by
/// the associativity formula
/// `(a_(p) w)_(n) v = Σ_i binom(p,i) (-1)^i [a_(p-i)(w_(n+i) v) - (-1)^p w_(p+n-i)(a_(i) v)]`,
/// recursing on the shorter monomial `w`. The `i`-sum is cut off where both
/// terms vanish for weight reasons. Monomial products are memoized.
pub struct Engine<V: Voa> {
    voa: V,
    memo: DashMap<ProductKey, Arc<FockVector<V::S>>>,
}

impl<V: Voa> Engine<V> {
    pub fn new(voa: V) -> Engine<V> {
        Engine { voa, memo: DashMap::new() }
    }

    pub fn voa(&self) -> &V {
        &self.voa
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_memo(&self) {
        self.memo.clear();
    }

    pub(crate) fn memo_entries(&self) -> Vec<(ProductKey, Arc<FockVector<V::S>>)> {
        self.memo.iter().map(|e| (e.key().clone(), e.value().clone())).collect()
    }

    pub(crate) fn seed_memo(&self, key: ProductKey, value: FockVector<V::S>) {
        self.memo.insert(key, Arc::new(value));
    }

    pub fn generator(&self, gen: u8) -> FockVector<V::S> {
        FockVector::from_monomial(self.voa.generator_state(gen))
    }

    /// `gen_(n) v`.
    pub fn mode(&self, gen: u8, n: i64, v: &FockVector<V::S>) -> FockVector<V::S> {
        let mut out = FockVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.voa.apply_mode(gen, n, m), c);
        }
        out
    }

    /// `u_(n) v`.
    pub fn product(&self, u: &FockVector<V::S>, n: i64, v: &FockVector<V::S>) -> FockVector<V::S> {
        let mut out = FockVector::zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                out.add_scaled(&self.product_monomials(mu, n, mv), &cu.times(cv));
            }
        }
        out
    }

    /// `L_{-1} v = v_(-2) 1`.
    pub fn translate(&self, v: &FockVector<V::S>) -> FockVector<V::S> {
        self.product(v, -2, &FockVector::vacuum())
    }

    fn product_with_left(&self, mu: &Monomial, n: i64, v: &FockVector<V::S>) -> FockVector<V::S> {
        let mut out = FockVector::zero();
        for (mv, c) in v.terms() {
            out.add_scaled(&self.product_monomials(mu, n, mv), c);
        }
        out
    }

    pub fn product_monomials(&self, mu: &Monomial, n: i64, mv: &Monomial) -> Arc<FockVector<V::S>> {
        if mu.is_vacuum() {
            return Arc::new(if n == -1 { FockVector::from_monomial(mv.clone()) } else { FockVector::zero() });
        }
        if (mu.weight() + mv.weight()) as i64 - n - 1 < 0 {
            return Arc::new(FockVector::zero());
        }
        let (first, rest) = mu.split_first().expect("non-vacuum");
        if rest.is_vacuum() && first.level == self.voa.generator_weight(first.gen) {
            return Arc::new(self.voa.apply_mode(first.gen, n, mv));
        }
        let key = (mu.clone(), n, mv.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let value = Arc::new(self.associativity(first.gen, self.voa.mode_index(first.gen, first.level), &rest, n, mv));
        self.memo.insert(key, value.clone());
        value
    }

    fn associativity(&self, gen: u8, p: i64, w: &Monomial, n: i64, mv: &Monomial) -> FockVector<V::S> {
        let wt_a = self.voa.generator_weight(gen) as i64;
        let wt_w = w.weight() as i64;
        let wt_v = mv.weight() as i64;
        let first_max = wt_w + wt_v - 1 - n;
        let second_max = wt_a + wt_v - 1;
        let imax = first_max.max(second_max);
        let sign_p = if p % 2 == 0 { 1 } else { -1 };
        let mut out = FockVector::zero();
        // binom(p, i) (-1)^i, updated in place
        let mut coef = BigInt::from(1);
        for i in 0..=imax {
            if i > 0 {
                coef = -coef * (p - i + 1) / i;
            }
            if i <= first_max {
                let inner = self.product_monomials(w, n + i, mv);
                if !inner.is_zero() {
                    out.add_scaled(&self.mode(gen, p - i, &inner), &V::S::from_integer(coef.clone()));
                }
            }
            if i <= second_max {
                let av = self.voa.apply_mode(gen, i, mv);
                if !av.is_zero() {
                    let outer = self.product_with_left(w, p + n - i, &av);
                    out.add_scaled(&outer, &V::S::from_integer(-&coef * sign_p));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Heisenberg, Virasoro};
    use crate::kernel::{rat, Poly, Rational, Var};
    use proptest::prelude::*;

    fn heis(rank: usize) -> Engine<Heisenberg> {
        Engine::new(Heisenberg::new(rank))
    }

    #[test]
    fn generator_pairing() {
        let e = heis(1);
        let x = e.generator(0);
        assert_eq!(e.product(&x, 1, &x), FockVector::vacuum());
        assert!(e.product(&x, 0, &x).is_zero());
    }

    #[test]
    fn vacuum_is_right_identity() {
        let e = heis(2);
        let vac = FockVector::vacuum();
        for w in 0..5 {
            for m in e.voa().basis(w) {
                let u = FockVector::from_monomial(m);
                assert_eq!(e.product(&u, -1, &vac), u);
            }
        }
    }

    #[test]
    fn conformal_vector_grades() {
        let e = heis(1);
        let omega = e.voa().conformal_vector();
        for w in 0..=6 {
            for m in e.voa().basis(w) {
                let u = FockVector::from_monomial(m);
                assert_eq!(e.product(&omega, 1, &u), u.scaled(&rat(w as i64, 1)));
            }
        }
    }

    #[test]
    fn weight_one_calculus() {
        let e = heis(1);
        let x = e.generator(0);
        let omega = e.voa().conformal_vector();
        for p in 1..5u32 {
            let xp = FockVector::<Rational>::from_monomial(Monomial::from_pairs(&[(0, p)]));
            for i in 0..6 {
                let expect = if i == p as i64 { FockVector::term(Monomial::vacuum(), rat(p as i64, 1)) } else { FockVector::zero() };
                assert_eq!(e.product(&x, i, &xp), expect);
            }
        }
        assert!(e.product(&x, 0, &omega).is_zero());
        assert_eq!(e.product(&x, 1, &omega), x);
        // x_(2) ω = λ 1 with λ = 0 for the standard conformal vector
        let lambda = e.product(&x, 2, &omega);
        assert!(lambda.is_zero() || lambda.weight() == Some(0));
    }

    #[test]
    fn virasoro_omega_modes() {
        let e = Engine::new(Virasoro::symbolic());
        let omega = e.generator(0);
        // ω_(3) ω = L_2 L_{-2} 1 = c/2
        let half_c = FockVector::term(Monomial::vacuum(), Poly::var(Var::C).scale(&rat(1, 2)));
        assert_eq!(e.product(&omega, 3, &omega), half_c);
        assert_eq!(e.product(&omega, 1, &omega), omega.scaled(&Poly::int(2)));
        // ω_(-1) ω = L_{-2} L_{-2} 1
        let ww = FockVector::from_monomial(Monomial::from_pairs(&[(0, 2), (0, 2)]));
        assert_eq!(e.product(&omega, -1, &omega), ww);
        // (L_{-3} 1)_(n) = derivative field: (L_{-1}ω)_(n) = -n ω_(n-1)
        let l3 = FockVector::from_monomial(Monomial::from_pairs(&[(0, 3)]));
        assert_eq!(e.translate(&omega), l3);
        for n in -3..4 {
            let lhs = e.product(&l3, n, &ww);
            let rhs = e.product(&omega, n - 1, &ww).scaled(&Poly::int(-n));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn virasoro_bracket_closure() {
        let e = Engine::new(Virasoro::symbolic());
        let c = Poly::var(Var::C);
        for w in 0..=4 {
            for m in e.voa().basis(w) {
                let v = FockVector::from_monomial(m);
                for s in -5i64..=5 {
                    for t in -5i64..=5 {
                        let st = e.mode(0, s + 1, &e.mode(0, t + 1, &v));
                        let ts = e.mode(0, t + 1, &e.mode(0, s + 1, &v));
                        let mut expect = e.mode(0, s + t + 1, &v).scaled(&Poly::int(s - t));
                        if s + t == 0 {
                            expect.add_scaled(&v, &c.scale(&rat(s * s * s - s, 12)));
                        }
                        assert_eq!(st.minus(&ts), expect, "s={s} t={t}");
                    }
                }
            }
        }
    }

    fn arb_monomial(rank: u8, max_weight: u32) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((0..rank, 1..=max_weight), 0..4).prop_map(move |pairs| {
            let mut w = 0;
            let mut keep = Vec::new();
            for (g, l) in pairs {
                if w + l <= max_weight {
                    w += l;
                    keep.push((g, l));
                }
            }
            Monomial::from_pairs(&keep)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn products_shift_weight(a in arb_monomial(2, 4), b in arb_monomial(2, 4), n in -4i64..4) {
            let e = heis(2);
            let out = e.product_monomials(&a, n, &b);
            let expect = a.weight() as i64 + b.weight() as i64 - n - 1;
            if let Some(w) = out.weight() {
                prop_assert_eq!(w as i64, expect);
            }
        }

        #[test]
        fn creation_from_vacuum(a in arb_monomial(3, 6)) {
            let e = heis(3);
            let u = FockVector::from_monomial(a);
            prop_assert_eq!(e.product(&u, -1, &FockVector::vacuum()), u);
        }
    }
}
