use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::fock::{Engine, FockVector, Monomial, Scalar, Voa};

use super::OrbifoldError;

/// `left ⊗ right` in `V ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMonomial {
    pub left: Monomial,
    pub right: Monomial,
}

impl TensorMonomial {
    pub fn new(left: Monomial, right: Monomial) -> TensorMonomial {
        TensorMonomial { left, right }
    }

    /// The orientation with the smaller factor on the left.
    pub fn canonical(left: Monomial, right: Monomial) -> TensorMonomial {
        if left <= right {
            TensorMonomial { left, right }
        } else {
            TensorMonomial { left: right, right: left }
        }
    }

    pub fn swapped(&self) -> TensorMonomial {
        TensorMonomial { left: self.right.clone(), right: self.left.clone() }
    }

    pub fn is_canonical(&self) -> bool {
        self.left <= self.right
    }

    pub fn is_diagonal(&self) -> bool {
        self.left == self.right
    }

    pub fn weight(&self) -> u32 {
        self.left.weight() + self.right.weight()
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.left, self.right)
    }
}

/// A vector of `V ⊗ V` in the plain tensor basis.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector<S: Scalar> {
    terms: BTreeMap<TensorMonomial, S>,
}

impl<S: Scalar> Default for TensorVector<S> {
    fn default() -> Self {
        TensorVector { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> TensorVector<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: TensorMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorVector<S>, c: &S) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.times(c));
        }
    }

    /// `a ⊗ b` extended bilinearly.
    pub fn tensor(a: &FockVector<S>, b: &FockVector<S>) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term(TensorMonomial::new(ma.clone(), mb.clone()), ca.times(cb));
            }
        }
        out
    }

    pub fn swapped(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.swapped(), c.clone());
        }
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(TensorMonomial::weight).max().unwrap_or(0)
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::from_i64(-1));
        out
    }
}

impl<S: Scalar> fmt::Debug for TensorVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{m}]")?;
        }
        Ok(())
    }
}

/// An `S₂`-fixed vector of `V ⊗ V`, stored on canonical monomials. The
/// coefficient `c` of `l ⊗ r` with `l < r` stands for `c (l ⊗ r + r ⊗ l)`;
/// on the diagonal it stands for `c (l ⊗ l)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymTensorVector<S: Scalar> {
    terms: BTreeMap<TensorMonomial, S>,
}

impl<S: Scalar> Default for SymTensorVector<S> {
    fn default() -> Self {
        SymTensorVector { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> SymTensorVector<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &TensorMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// `c · sym(l, r)`, with any orientation of the pair.
    pub fn add_sym(&mut self, left: Monomial, right: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        let key = TensorMonomial::canonical(left, right);
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (m, x) in &other.terms {
            self.add_sym(m.left.clone(), m.right.clone(), x.times(c));
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::from_i64(-1));
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    /// Reads an `S₂`-invariant tensor; fails if the input is not invariant.
    pub fn from_tensor(t: &TensorVector<S>) -> Result<Self, OrbifoldError> {
        let mut out = Self::zero();
        for (m, c) in t.terms() {
            let mirror = t.terms.get(&m.swapped()).cloned().unwrap_or_else(S::zero);
            if &mirror != c {
                return Err(OrbifoldError::NotSymmetric(m.to_string()));
            }
            if m.is_canonical() {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn to_tensor(&self) -> TensorVector<S> {
        let mut out = TensorVector::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
            if !m.is_diagonal() {
                out.add_term(m.swapped(), c.clone());
            }
        }
        out
    }

    /// The common weight of all terms; `None` for zero.
    pub fn weight(&self) -> Result<Option<u32>, OrbifoldError> {
        let mut it = self.terms.keys().map(TensorMonomial::weight);
        let Some(w) = it.next() else { return Ok(None) };
        if it.all(|x| x == w) {
            Ok(Some(w))
        } else {
            Err(OrbifoldError::NotHomogeneous)
        }
    }
}

impl<S: Scalar> fmt::Display for SymTensorVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})sym[{m}]")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for SymTensorVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `η(a) = a ⊗ 1 + 1 ⊗ a`.
pub fn eta<S: Scalar>(a: &FockVector<S>) -> SymTensorVector<S> {
    let mut out = SymTensorVector::zero();
    for (m, c) in a.terms() {
        // on the diagonal 1 ⊗ 1 the two summands coincide
        let c = if m.is_vacuum() { c.plus(c) } else { c.clone() };
        out.add_sym(m.clone(), Monomial::vacuum(), c);
    }
    out
}

/// `φ₂(a, b) = a ⊗ b + b ⊗ a`.
pub fn phi2<S: Scalar>(a: &FockVector<S>, b: &FockVector<S>) -> SymTensorVector<S> {
    let mut out = SymTensorVector::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let c = ca.times(cb);
            let c = if ma == mb { c.plus(&c) } else { c };
            out.add_sym(ma.clone(), mb.clone(), c);
        }
    }
    out
}

/// `n`-th products in `V ⊗ V`:
/// `(a ⊗ b)_(n) (c ⊗ d) = Σ_j (a_(j) c) ⊗ (b_(n-j-1) d)`.
pub struct TensorSquare<'e, V: Voa> {
    engine: &'e Engine<V>,
}

impl<'e, V: Voa> TensorSquare<'e, V> {
    pub fn new(engine: &'e Engine<V>) -> Self {
        TensorSquare { engine }
    }

    pub fn engine(&self) -> &'e Engine<V> {
        self.engine
    }

    fn monomial_product(&self, x: &TensorMonomial, n: i64, y: &TensorMonomial) -> TensorVector<V::S> {
        let mut out = TensorVector::zero();
        let lo = n - (x.right.weight() + y.right.weight()) as i64;
        let hi = (x.left.weight() + y.left.weight()) as i64 - 1;
        let (lo, hi) = if x.left.is_vacuum() {
            (-1, -1)
        } else if x.right.is_vacuum() {
            (n, n)
        } else {
            (lo, hi)
        };
        for j in lo..=hi {
            let l = self.engine.product_monomials(&x.left, j, &y.left);
            if l.is_zero() {
                continue;
            }
            let r = self.engine.product_monomials(&x.right, n - j - 1, &y.right);
            if r.is_zero() {
                continue;
            }
            for (ml, cl) in l.terms() {
                for (mr, cr) in r.terms() {
                    out.add_term(TensorMonomial::new(ml.clone(), mr.clone()), cl.times(cr));
                }
            }
        }
        out
    }

    pub fn product(&self, u: &TensorVector<V::S>, n: i64, v: &TensorVector<V::S>) -> TensorVector<V::S> {
        let mut out = TensorVector::zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                out.add_scaled(&self.monomial_product(mu, n, mv), &cu.times(cv));
            }
        }
        out
    }

    /// The product of two fixed vectors, which is again fixed.
    pub fn sym_product(
        &self,
        u: &SymTensorVector<V::S>,
        n: i64,
        v: &SymTensorVector<V::S>,
    ) -> SymTensorVector<V::S> {
        let t = self.product(&u.to_tensor(), n, &v.to_tensor());
        SymTensorVector::from_tensor(&t).expect("products of fixed vectors are fixed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Heisenberg;
    use crate::kernel::{rat, Rational};

    fn mono(pairs: &[(u8, u32)]) -> FockVector<Rational> {
        FockVector::from_monomial(Monomial::from_pairs(pairs))
    }

    #[test]
    fn eta_of_vacuum_is_doubled_diagonal() {
        let e = eta(&FockVector::<Rational>::vacuum());
        assert_eq!(e.coefficient(&TensorMonomial::new(Monomial::vacuum(), Monomial::vacuum())), rat(2, 1));
        assert_eq!(e.to_tensor().terms().count(), 1);
    }

    #[test]
    fn eta_and_phi_round_trip() {
        let a = mono(&[(0, 2), (0, 1)]);
        let b = mono(&[(0, 1)]);
        for s in [eta(&a), phi2(&a, &b), phi2(&b, &b)] {
            assert_eq!(SymTensorVector::from_tensor(&s.to_tensor()).unwrap(), s);
        }
        let t = TensorVector::tensor(&a, &b);
        assert!(matches!(SymTensorVector::from_tensor(&t), Err(OrbifoldError::NotSymmetric(_))));
    }

    #[test]
    fn eta_is_a_homomorphism_for_nonnegative_products() {
        let e = Engine::new(Heisenberg::new(1));
        let sq = TensorSquare::new(&e);
        let vs: Vec<_> = (0..=4).flat_map(|w| e.voa().basis(w)).map(FockVector::from_monomial).collect();
        for a in &vs {
            for b in &vs {
                for i in 0..4 {
                    assert_eq!(sq.sym_product(&eta(a), i, &eta(b)), eta(&e.product(a, i, b)));
                }
            }
        }
    }

    #[test]
    fn phi2_from_normal_ordered_product() {
        let e = Engine::new(Heisenberg::new(1));
        let sq = TensorSquare::new(&e);
        let vs: Vec<_> = (0..=3).flat_map(|w| e.voa().basis(w)).map(FockVector::from_monomial).collect();
        for a in &vs {
            for b in &vs {
                let lhs = sq.sym_product(&eta(a), -1, &eta(b)).minus(&eta(&e.product(a, -1, b)));
                assert_eq!(lhs, phi2(a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn vacuum_acts_as_identity() {
        let e = Engine::new(Heisenberg::new(2));
        let sq = TensorSquare::new(&e);
        let one = eta(&FockVector::<Rational>::vacuum()).scaled(&rat(1, 2));
        let x = phi2(&mono(&[(0, 2)]), &mono(&[(1, 1), (0, 1)]));
        assert_eq!(sq.sym_product(&one, -1, &x), x);
        assert_eq!(sq.sym_product(&x, -1, &one), x);
    }
}
