use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Monomial;
use super::scalar::Scalar;

/// A finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct FockVector<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for FockVector<S> {
    fn default() -> Self {
        FockVector { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> FockVector<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::from_monomial(Monomial::vacuum())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(m, S::one())
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
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

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FockVector<S>, c: &S) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.times(c));
        }
    }

    pub fn add_assign(&mut self, other: &FockVector<S>) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> FockVector<S> {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn minus(&self, other: &FockVector<S>) -> FockVector<S> {
        let mut out = self.clone();
        out.add_scaled(other, &S::one().negate());
        out
    }

    pub fn plus(&self, other: &FockVector<S>) -> FockVector<S> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// The common weight of all terms, if homogeneous (`None` for zero).
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    /// Homogeneous components by weight.
    pub fn components(&self) -> BTreeMap<u32, FockVector<S>> {
        let mut out: BTreeMap<u32, FockVector<S>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> FockVector<S> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

impl<S: Scalar> FromIterator<(Monomial, S)> for FockVector<S> {
    fn from_iter<I: IntoIterator<Item = (Monomial, S)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (m, c) in iter {
            v.add_term(m, c);
        }
        v
    }
}

impl<S: Scalar> fmt::Display for FockVector<S> {
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

impl<S: Scalar> fmt::Debug for FockVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector({self})")
    }
}
