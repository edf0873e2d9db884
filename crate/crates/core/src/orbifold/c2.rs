use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::fock::{Engine, FockVector, Heisenberg, Mode, Monomial, Voa};
use crate::kernel::{binomial, rat, Rational};

use super::echelon::{integer_row, Echelon};
use super::tensor::{SymTensorVector, TensorMonomial, TensorSquare};
use super::OrbifoldError;

/// Image of a homogeneous fixed vector in the quotient by `C₂`, as exact
/// coordinates. Zero iff the vector lies in `C₂`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Residue {
    pub weight: u32,
    /// Keyed by `(block, column)`; blocks are the factorized route's `h⁺(-1)`
    /// monomials and always the vacuum on the definitional route.
    pub coords: BTreeMap<(Monomial, usize), Rational>,
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Membership in `C₂` of the fixed-point subalgebra of `V ⊗ V`.
pub trait C2Oracle: Sync {
    fn label(&self) -> String;

    fn residue(&self, v: &SymTensorVector<Rational>) -> Result<Residue, OrbifoldError>;

    fn in_c2(&self, v: &SymTensorVector<Rational>) -> Result<bool, OrbifoldError> {
        Ok(self.residue(v)?.is_zero())
    }

    /// Computes the slices of all weights up to `w` ahead of time.
    fn prepare(&self, w: u32);
}

/// The weight-`w` slice: spanning products `u_(-2) v` over a fixed basis,
/// eliminated exactly.
#[derive(Clone, Debug)]
pub struct C2Slice<B> {
    pub weight: u32,
    pub basis: Vec<B>,
    pub echelon: Echelon,
}

impl<B> C2Slice<B> {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduced row-echelon rows over the slice basis.
    pub fn rref(&self) -> Vec<Vec<Rational>> {
        self.echelon.rref()
    }
}

/// Pairs of weights `(wu, wv)` with `wu + wv = w - 1` and `wu >= wv`.
///
/// By skew-symmetry `u_(-2) v + v_(-2) u` is a combination of translates
/// `z_(-2) 1`, and those pairs are kept, so half the products suffice.
fn spanning_weights(w: u32) -> Vec<(u32, u32)> {
    if w == 0 {
        return Vec::new();
    }
    (0..w).filter(|wv| 2 * wv < w).map(|wv| (w - 1 - wv, wv)).collect()
}

/// The definitional route: the fixed-point subalgebra of `V ⊗ V` for any
/// engine over `ℚ`, with columns indexed by canonical tensor monomials.
pub struct GenericC2<V: Voa<S = Rational>> {
    engine: Engine<V>,
    slices: DashMap<u32, Arc<C2Slice<TensorMonomial>>>,
}

impl<V: Voa<S = Rational>> GenericC2<V> {
    pub fn new(voa: V) -> Self {
        GenericC2 { engine: Engine::new(voa), slices: DashMap::new() }
    }

    pub fn engine(&self) -> &Engine<V> {
        &self.engine
    }

    /// Canonical monomials `l ⊗ r` (`l <= r`) of total weight `w`.
    pub fn fixed_basis(&self, w: u32) -> Vec<TensorMonomial> {
        let mut out = Vec::new();
        for wl in 0..=w {
            let rights = self.engine.voa().basis(w - wl);
            for l in self.engine.voa().basis(wl) {
                for r in &rights {
                    if &l <= r {
                        out.push(TensorMonomial::new(l.clone(), r.clone()));
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn basis_vector(m: &TensorMonomial) -> SymTensorVector<Rational> {
        let mut v = SymTensorVector::zero();
        v.add_sym(m.left.clone(), m.right.clone(), rat(1, 1));
        v
    }

    pub fn slice(&self, w: u32) -> Arc<C2Slice<TensorMonomial>> {
        if let Some(s) = self.slices.get(&w) {
            return s.clone();
        }
        let basis = self.fixed_basis(w);
        let index: HashMap<&TensorMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut echelon = Echelon::new(basis.len());
        let sq = TensorSquare::new(&self.engine);
        'outer: for (wu, wv) in spanning_weights(w) {
            let us = self.fixed_basis(wu);
            let vs = self.fixed_basis(wv);
            for u in &us {
                let uu = Self::basis_vector(u);
                for v in &vs {
                    if echelon.is_full() {
                        break 'outer;
                    }
                    let p = sq.sym_product(&uu, -2, &Self::basis_vector(v));
                    if p.is_zero() {
                        continue;
                    }
                    let mut row = vec![Rational::zero(); basis.len()];
                    for (m, c) in p.terms() {
                        row[index[m]] = c.clone();
                    }
                    echelon.insert(integer_row(&row));
                }
            }
        }
        let slice = Arc::new(C2Slice { weight: w, basis, echelon });
        self.slices.insert(w, slice.clone());
        slice
    }
}

impl<V: Voa<S = Rational>> C2Oracle for GenericC2<V> {
    fn label(&self) -> String {
        format!("definitional C2 of fixed points of {} squared", self.engine.voa().label())
    }

    fn residue(&self, v: &SymTensorVector<Rational>) -> Result<Residue, OrbifoldError> {
        let Some(w) = v.weight()? else { return Ok(Residue::default()) };
        let slice = self.slice(w);
        let mut row = vec![Rational::zero(); slice.basis.len()];
        for (m, c) in v.terms() {
            let i = slice.basis.binary_search(m).expect("canonical monomial of the right weight");
            row[i] = c.clone();
        }
        let coords = slice
            .echelon
            .residue(&row)
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| ((Monomial::vacuum(), i), x))
            .collect();
        Ok(Residue { weight: w, coords })
    }

    fn prepare(&self, w: u32) {
        (0..=w).into_par_iter().for_each(|k| {
            self.slice(k);
        });
    }
}

/// Heisenberg route. With `h± = a ⊗ 1 ± 1 ⊗ a` the square splits as
/// `M⁺ ⊗ M⁻` (both Heisenberg with Gram `2G`) and the swap acts as `θ` on
/// `M⁻` only, so the fixed points are `M⁺ ⊗ (M⁻)^θ` and
/// `C₂ = C₂(M⁺) ⊗ (M⁻)^θ + M⁺ ⊗ C₂((M⁻)^θ)`. Since `C₂(M⁺)` is spanned by
/// the monomials with a mode below `-1`, membership reduces to `C₂((M⁻)^θ)`
/// once for each power of `h⁺(-1)`.
pub struct FactorizedC2 {
    rank: u8,
    minus: Engine<Heisenberg>,
    slices: DashMap<u32, Arc<C2Slice<Monomial>>>,
}

type Blocks = BTreeMap<Monomial, FockVector<Rational>>;

impl FactorizedC2 {
    pub fn new(v: &Heisenberg) -> Self {
        let doubled = v.gram().iter().map(|row| row.iter().map(|x| x * rat(2, 1)).collect()).collect();
        FactorizedC2 { rank: v.rank() as u8, minus: Engine::new(Heisenberg::with_gram(doubled)), slices: DashMap::new() }
    }

    /// The engine for `M⁻`.
    pub fn minus_engine(&self) -> &Engine<Heisenberg> {
        &self.minus
    }

    /// `θ`-even monomials of `M⁻` at weight `w`.
    pub fn even_basis(&self, w: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.minus.voa().basis(w).into_iter().filter(|m| m.len() % 2 == 0).collect();
        out.sort();
        out
    }

    pub fn slice(&self, w: u32) -> Arc<C2Slice<Monomial>> {
        if let Some(s) = self.slices.get(&w) {
            return s.clone();
        }
        let basis = self.even_basis(w);
        let mut echelon = Echelon::new(basis.len());
        'outer: for (wu, wv) in spanning_weights(w) {
            let vs = self.even_basis(wv);
            for u in self.even_basis(wu) {
                for v in &vs {
                    if echelon.is_full() {
                        break 'outer;
                    }
                    let p = self.minus.product_monomials(&u, -2, v);
                    if p.is_zero() {
                        continue;
                    }
                    let mut row = vec![Rational::zero(); basis.len()];
                    for (m, c) in p.terms() {
                        let i = basis.binary_search(m).expect("products of even monomials are even");
                        row[i] = c.clone();
                    }
                    echelon.insert(integer_row(&row));
                }
            }
        }
        let slice = Arc::new(C2Slice { weight: w, basis, echelon });
        self.slices.insert(w, slice.clone());
        slice
    }

    /// Rewrites a fixed vector in `h±` modes, dropping every term with an
    /// `h⁺` mode below `-1`, grouped by the `h⁺(-1)` part.
    pub fn blocks(&self, v: &SymTensorVector<Rational>) -> Blocks {
        let mut out = Blocks::new();
        for (m, c) in v.to_tensor().terms() {
            self.expand(&m.left, &m.right, c, &mut out);
        }
        out.retain(|_, q| !q.is_zero());
        out
    }

    fn expand(&self, left: &Monomial, right: &Monomial, c: &Rational, out: &mut Blocks) {
        let mut scale = c.clone();
        let mut deep = Vec::new();
        let mut ones_l = vec![0u32; self.rank as usize];
        let mut ones_r = vec![0u32; self.rank as usize];
        for (modes, sign, ones) in [(left.modes(), 1, &mut ones_l), (right.modes(), -1, &mut ones_r)] {
            for md in modes {
                scale *= rat(1, 2);
                if md.level == 1 {
                    ones[md.gen as usize] += 1;
                } else {
                    scale *= rat(sign, 1);
                    deep.push(*md);
                }
            }
        }
        // per generator: (h⁺ + h⁻)^kl (h⁺ - h⁻)^kr, keeping (h⁺ count, h⁻ count, coefficient)
        let mut partial: Vec<(Vec<Mode>, Vec<Mode>, BigInt)> = vec![(Vec::new(), deep, BigInt::from(1))];
        for g in 0..self.rank {
            let (kl, kr) = (ones_l[g as usize], ones_r[g as usize]);
            if kl + kr == 0 {
                continue;
            }
            let mut next = Vec::new();
            for (plus, minus, coef) in &partial {
                for s in 0..=kl {
                    for t in 0..=kr {
                        let mut k = coef * binomial(kl as i64, s as u64) * binomial(kr as i64, t as u64);
                        if (kr - t) % 2 == 1 {
                            k = -k;
                        }
                        let mut p = plus.clone();
                        p.extend(std::iter::repeat_n(Mode { gen: g, level: 1 }, (s + t) as usize));
                        let mut q = minus.clone();
                        q.extend(std::iter::repeat_n(Mode { gen: g, level: 1 }, (kl - s + kr - t) as usize));
                        next.push((p, q, k));
                    }
                }
            }
            partial = next;
        }
        for (plus, minus, coef) in partial {
            let k = &scale * Rational::from_integer(coef);
            out.entry(Monomial::new(plus)).or_default().add_term(Monomial::new(minus), k);
        }
    }
}

impl C2Oracle for FactorizedC2 {
    fn label(&self) -> String {
        format!("factorized C2 via {}", self.minus.voa().label())
    }

    fn residue(&self, v: &SymTensorVector<Rational>) -> Result<Residue, OrbifoldError> {
        let Some(w) = v.weight()? else { return Ok(Residue::default()) };
        let mut coords = BTreeMap::new();
        for (p, q) in self.blocks(v) {
            let slice = self.slice(w - p.weight());
            let mut row = vec![Rational::zero(); slice.basis.len()];
            for (m, c) in q.terms() {
                let Ok(i) = slice.basis.binary_search(m) else {
                    return Err(OrbifoldError::NotFixed(format!("{m}")));
                };
                row[i] = c.clone();
            }
            for (i, x) in slice.echelon.residue(&row).into_iter().enumerate() {
                if !x.is_zero() {
                    coords.insert((p.clone(), i), x);
                }
            }
        }
        Ok(Residue { weight: w, coords })
    }

    fn prepare(&self, w: u32) {
        let mut ws: Vec<u32> = (0..=w).collect();
        // largest slices first for better load balance
        ws.reverse();
        ws.into_par_iter().for_each(|k| {
            self.slice(k);
        });
    }
}

/// Total rank of a family of residues, weight by weight.
pub fn residue_rank<'a>(residues: impl IntoIterator<Item = &'a Residue>) -> usize {
    let mut by_weight: BTreeMap<u32, Vec<&Residue>> = BTreeMap::new();
    for r in residues {
        if !r.is_zero() {
            by_weight.entry(r.weight).or_default().push(r);
        }
    }
    let mut total = 0;
    for rs in by_weight.values() {
        let mut keys: Vec<&(Monomial, usize)> = rs.iter().flat_map(|r| r.coords.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut ech = Echelon::new(keys.len());
        for r in rs {
            let mut row = vec![Rational::zero(); keys.len()];
            for (k, x) in &r.coords {
                row[keys.binary_search(&k).unwrap()] = x.clone();
            }
            ech.insert(integer_row(&row));
        }
        total += ech.rank();
    }
    total
}

/// Fixed-point basis dimension check helper: `dim (V⊗V)^S₂_w`.
pub fn fixed_dim<V: Voa>(voa: &V, w: u32) -> usize {
    let dims: Vec<usize> = (0..=w).map(|k| voa.basis(k).len()).collect();
    let mut total = 0;
    for a in 0..=w {
        let b = w - a;
        match a.cmp(&b) {
            std::cmp::Ordering::Less => total += dims[a as usize] * dims[b as usize],
            std::cmp::Ordering::Equal => total += dims[a as usize] * (dims[a as usize] + 1) / 2,
            std::cmp::Ordering::Greater => {}
        }
    }
    total
}
