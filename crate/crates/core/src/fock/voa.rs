use super::monomial::{monomials_of_weight, Mode, Monomial};
use super::scalar::Scalar;
use super::vector::FockVector;
use crate::kernel::{rat, Poly, Rational, Var};

/// A vacuum module spanned by normal-ordered creation monomials in finitely
/// many strong generators, with exact mode action.
pub trait Voa: Send + Sync {
    type S: Scalar;

    /// Canonical description, used in reports and cache keys.
    fn label(&self) -> String;

    fn generators(&self) -> u8;

    fn generator_weight(&self, gen: u8) -> u32;

    /// Smallest creation level of any generator.
    fn min_level(&self) -> u32;

    /// `gen_(n) m`, normal ordered.
    fn apply_mode(&self, gen: u8, n: i64, m: &Monomial) -> FockVector<Self::S>;

    fn basis(&self, weight: u32) -> Vec<Monomial> {
        monomials_of_weight(self.generators(), self.min_level(), weight)
    }

    /// Mode index `n` with `gen_(n) 1` equal to the creation mode at `level`.
    fn mode_index(&self, gen: u8, level: u32) -> i64 {
        self.generator_weight(gen) as i64 - 1 - level as i64
    }

    /// The generator as a state: `gen_(-1) 1`.
    fn generator_state(&self, gen: u8) -> Monomial {
        Monomial::from_sorted(vec![Mode { gen, level: self.generator_weight(gen) }])
    }
}

/// Rank-`r` Heisenberg vacuum module with `[a^i_(m), a^j_(n)] = m G_ij δ_{m+n,0}`.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    gram: Vec<Vec<Rational>>,
}

impl Heisenberg {
    /// Orthonormal generators.
    pub fn new(rank: usize) -> Heisenberg {
        assert!((1..=16).contains(&rank), "rank must be in 1..=16");
        let gram = (0..rank)
            .map(|i| (0..rank).map(|j| rat((i == j) as i64, 1)).collect())
            .collect();
        Heisenberg { gram }
    }

    pub fn with_gram(gram: Vec<Vec<Rational>>) -> Heisenberg {
        let r = gram.len();
        assert!((1..=16).contains(&r), "rank must be in 1..=16");
        assert!(gram.iter().all(|row| row.len() == r), "square Gram matrix");
        assert!((0..r).all(|i| (0..r).all(|j| gram[i][j] == gram[j][i])), "symmetric Gram matrix");
        Heisenberg { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `½ Σ (G⁻¹)_ij a^i_(-1) a^j_(-1) 1`.
    pub fn conformal_vector(&self) -> FockVector<Rational> {
        let inv = invert(&self.gram).expect("nondegenerate Gram matrix");
        let mut out = FockVector::zero();
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let m = Monomial::from_pairs(&[(i as u8, 1), (j as u8, 1)]);
                out.add_term(m, x * rat(1, 2));
            }
        }
        out
    }
}

fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| rat((i == j) as i64, 1)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !Scalar::is_zero(&m[r][col]))?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !Scalar::is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl Voa for Heisenberg {
    type S = Rational;

    fn label(&self) -> String {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("heisenberg(rank={}, gram=[{}])", self.rank(), rows.join(";"))
    }

    fn generators(&self) -> u8 {
        self.rank() as u8
    }

    fn generator_weight(&self, _gen: u8) -> u32 {
        1
    }

    fn min_level(&self) -> u32 {
        1
    }

    fn apply_mode(&self, gen: u8, n: i64, m: &Monomial) -> FockVector<Rational> {
        if n < 0 {
            return FockVector::from_monomial(m.with(Mode { gen, level: (-n) as u32 }));
        }
        let mut out = FockVector::zero();
        if n == 0 {
            return out;
        }
        for (idx, md) in m.modes().iter().enumerate() {
            if md.level as i64 == n {
                let g = &self.gram[gen as usize][md.gen as usize];
                if !Scalar::is_zero(g) {
                    out.add_term(m.without(idx), g.times(&Rational::from_integer(n.into())));
                }
            }
        }
        out
    }
}

/// The Virasoro vacuum module `L_{-m_1}⋯L_{-m_r}1`, `m_1 ≥ ⋯ ≥ m_r ≥ 2`, with
/// central charge in the scalar field. The vertex operator of `ω = L_{-2}1`
/// has modes `ω_(n) = L_{n-1}`.
#[derive(Clone, Debug)]
pub struct Virasoro<S: Scalar> {
    central_charge: S,
}

impl Virasoro<Poly> {
    /// Central charge kept as the symbol `c_V`.
    pub fn symbolic() -> Virasoro<Poly> {
        Virasoro { central_charge: Poly::var(Var::C) }
    }
}

impl Virasoro<Rational> {
    pub fn numeric(c: Rational) -> Virasoro<Rational> {
        Virasoro { central_charge: c }
    }
}

impl<S: Scalar> Virasoro<S> {
    pub fn central_charge(&self) -> &S {
        &self.central_charge
    }

    /// `L_k m`, normal ordered.
    pub fn apply_l(&self, k: i64, m: &Monomial) -> FockVector<S> {
        let Some((first, rest)) = m.split_first() else {
            return if k <= -2 {
                FockVector::from_monomial(Monomial::from_sorted(vec![Mode { gen: 0, level: (-k) as u32 }]))
            } else {
                FockVector::zero()
            };
        };
        if k == 0 {
            return FockVector::term(m.clone(), S::from_i64(m.weight() as i64));
        }
        let m1 = first.level as i64;
        if -k >= m1 {
            return FockVector::from_monomial(m.with(Mode { gen: 0, level: (-k) as u32 }));
        }
        // L_k L_{-m1} w = L_{-m1} L_k w + (k+m1) L_{k-m1} w + δ_{k,m1} (k³-k)/12 c w
        let mut out = FockVector::zero();
        for (mono, c) in self.apply_l(k, &rest).terms() {
            out.add_scaled(&self.apply_l(-m1, mono), c);
        }
        if k + m1 != 0 {
            out.add_scaled(&self.apply_l(k - m1, &rest), &S::from_i64(k + m1));
        }
        if k == m1 {
            let central = S::from_rational(&rat(k * k * k - k, 12)).times(&self.central_charge);
            out.add_term(rest, central);
        }
        out
    }

    /// Applies the word `L_{w_1} L_{w_2} ⋯ L_{w_r}` (rightmost first) to `tail`
    /// and returns the result in the PBW basis.
    pub fn normal_order(&self, word: &[i64], tail: &FockVector<S>) -> FockVector<S> {
        let mut v = tail.clone();
        for &k in word.iter().rev() {
            let mut next = FockVector::zero();
            for (m, c) in v.terms() {
                next.add_scaled(&self.apply_l(k, m), c);
            }
            v = next;
        }
        v
    }
}

impl<S: Scalar> Voa for Virasoro<S> {
    type S = S;

    fn label(&self) -> String {
        format!("virasoro(c={})", self.central_charge)
    }

    fn generators(&self) -> u8 {
        1
    }

    fn generator_weight(&self, _gen: u8) -> u32 {
        2
    }

    fn min_level(&self) -> u32 {
        2
    }

    fn apply_mode(&self, gen: u8, n: i64, m: &Monomial) -> FockVector<S> {
        debug_assert_eq!(gen, 0);
        self.apply_l(n - 1, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(p: &[(u8, u32)]) -> Monomial {
        Monomial::from_pairs(p)
    }

    #[test]
    fn heisenberg_annihilation() {
        let h = Heisenberg::new(1);
        let x = mono(&[(0, 1)]);
        assert_eq!(h.apply_mode(0, 1, &x), FockVector::vacuum());
        assert!(h.apply_mode(0, 0, &x).is_zero());
        assert!(h.apply_mode(0, 0, &mono(&[(0, 3), (0, 1)])).is_zero());
        // a_(2) a_(-2) a_(-2) 1 = 4 a_(-2) 1
        let v = h.apply_mode(0, 2, &mono(&[(0, 2), (0, 2)]));
        assert_eq!(v, FockVector::term(mono(&[(0, 2)]), rat(4, 1)));
    }

    #[test]
    fn heisenberg_gram_pairing() {
        let h = Heisenberg::with_gram(vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)]]);
        let v = h.apply_mode(0, 1, &mono(&[(1, 1)]));
        assert_eq!(v, FockVector::term(Monomial::vacuum(), rat(1, 1)));
        let w = h.conformal_vector();
        assert_eq!(w.coefficient(&mono(&[(0, 1), (0, 1)])), rat(1, 3));
        assert_eq!(w.coefficient(&mono(&[(0, 1), (1, 1)])), rat(-1, 3));
    }

    #[test]
    fn virasoro_central_term() {
        let v = Virasoro::symbolic();
        let out = v.apply_l(2, &mono(&[(0, 2)]));
        assert_eq!(out, FockVector::term(Monomial::vacuum(), Poly::var(Var::C).scale(&rat(1, 2))));
    }

    #[test]
    fn virasoro_vacuum_annihilation() {
        let v = Virasoro::symbolic();
        assert!(v.apply_l(-1, &Monomial::vacuum()).is_zero());
        assert!(v.apply_l(0, &Monomial::vacuum()).is_zero());
        assert!(v.apply_l(1, &Monomial::vacuum()).is_zero());
    }

    #[test]
    fn virasoro_reordering() {
        let v = Virasoro::symbolic();
        let out = v.normal_order(&[-2, -3], &FockVector::vacuum());
        let mut expect = FockVector::from_monomial(mono(&[(0, 3), (0, 2)]));
        expect.add_term(mono(&[(0, 5)]), Poly::one());
        assert_eq!(out, expect);
        let sorted = FockVector::from_monomial(mono(&[(0, 4), (0, 2)]));
        assert_eq!(v.normal_order(&[-4, -2], &FockVector::vacuum()), sorted);
    }

    #[test]
    fn virasoro_l0_grading() {
        let v = Virasoro::numeric(rat(1, 2));
        for w in 0..9 {
            for m in v.basis(w) {
                assert_eq!(v.apply_l(0, &m), FockVector::term(m.clone(), rat(w as i64, 1)));
            }
        }
    }
}
