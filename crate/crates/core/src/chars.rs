//! Graded dimensions by exact counting: Heisenberg spaces, rank-one lattice
//! vertex algebras and their cosets, `θ`-fixed parts and symmetric squares.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::report::{CheckReport, Checker};

/// Dimensions indexed by weights in `½ℤ`, stored as doubled weights.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DimSeries {
    /// Largest doubled weight covered.
    pub cutoff_twice: u32,
    dims: BTreeMap<u32, u64>,
}

impl DimSeries {
    pub fn new(cutoff: u32) -> DimSeries {
        DimSeries { cutoff_twice: 2 * cutoff, dims: BTreeMap::new() }
    }

    fn add(&mut self, twice: u32, d: u64) {
        if d > 0 && twice <= self.cutoff_twice {
            *self.dims.entry(twice).or_insert(0) += d;
        }
    }

    /// Dimension at an integral weight.
    pub fn at(&self, n: u32) -> u64 {
        self.at_twice(2 * n)
    }

    pub fn at_twice(&self, t: u32) -> u64 {
        self.dims.get(&t).copied().unwrap_or(0)
    }

    /// Integral weights `0..=cutoff` as a dense vector.
    pub fn integral(&self) -> Vec<u64> {
        (0..=self.cutoff_twice / 2).map(|n| self.at(n)).collect()
    }

    pub fn has_half_integral(&self) -> bool {
        self.dims.keys().any(|t| t % 2 == 1)
    }

    /// Nonzero entries as `(doubled weight, dim)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.dims.iter().map(|(&t, &d)| (t, d))
    }

    /// Graded dimension of a tensor product.
    pub fn tensor(&self, other: &DimSeries) -> DimSeries {
        let mut out = DimSeries { cutoff_twice: self.cutoff_twice.min(other.cutoff_twice), dims: BTreeMap::new() };
        for (&a, &x) in &self.dims {
            for (&b, &y) in &other.dims {
                out.add(a + b, x * y);
            }
        }
        out
    }

    pub fn plus(&self, other: &DimSeries) -> DimSeries {
        let mut out = DimSeries { cutoff_twice: self.cutoff_twice.min(other.cutoff_twice), dims: BTreeMap::new() };
        for (&t, &d) in self.dims.iter().chain(&other.dims) {
            out.add(t, d);
        }
        out
    }
}

/// Serializes as `[[weight, dim], ...]`; half-integral weights as `x.5`.
impl Serialize for DimSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.dims.len()))?;
        for (&t, &d) in &self.dims {
            if t % 2 == 0 {
                seq.serialize_element(&(t / 2, d))?;
            } else {
                seq.serialize_element(&(t as f64 / 2.0, d))?;
            }
        }
        seq.end()
    }
}

/// Which `θ`-eigenspace to count; `θ` negates every generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixed {
    All,
    ThetaPlus,
    ThetaMinus,
}

/// Number of `r`-colored partitions of each `n <= cutoff`, split by the
/// parity of the number of parts: `[even, odd]`.
fn colored_partitions_by_parity(rank: u32, cutoff: u32) -> Vec<[u64; 2]> {
    let n = cutoff as usize;
    let mut dp = vec![[0u64; 2]; n + 1];
    dp[0][0] = 1;
    for part in 1..=n {
        for _ in 0..rank {
            // unbounded use of one colored part
            for w in part..=n {
                let [e, o] = dp[w - part];
                dp[w][0] += o;
                dp[w][1] += e;
            }
        }
    }
    dp
}

pub fn heisenberg_dims(rank: u32, fixed: Fixed, cutoff: u32) -> DimSeries {
    assert!(rank >= 1, "rank must be positive");
    let mut out = DimSeries::new(cutoff);
    for (n, [e, o]) in colored_partitions_by_parity(rank, cutoff).into_iter().enumerate() {
        let d = match fixed {
            Fixed::All => e + o,
            Fixed::ThetaPlus => e,
            Fixed::ThetaMinus => o,
        };
        out.add(2 * n as u32, d);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CosetShift {
    Zero,
    Half,
}

/// The rank-one lattice `ℤβ` with `⟨β,β⟩ = norm`, or its coset `½β + ℤβ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSpec {
    pub norm: u32,
    pub coset_shift: CosetShift,
}

impl LatticeSpec {
    /// `ℤα` with `⟨α,α⟩ = 2k`.
    pub fn even(k: u32) -> LatticeSpec {
        LatticeSpec { norm: 2 * k, coset_shift: CosetShift::Zero }
    }

    pub fn new(norm: u32, coset_shift: CosetShift) -> LatticeSpec {
        assert!(norm >= 1 && norm.is_multiple_of(2), "norm must be a positive even integer");
        if coset_shift == CosetShift::Half {
            assert!(norm.is_multiple_of(4), "half coset weights must lie in ½ℤ");
        }
        LatticeSpec { norm, coset_shift }
    }

    /// Doubled weights `⟨γ,γ⟩` of the coset vectors up to `limit`, one per
    /// `±` orbit, flagging the fixed vector `γ = 0`.
    fn orbits(&self, limit: u32) -> Vec<(u32, bool)> {
        let mut out = Vec::new();
        for j in 0u64.. {
            let twice = match self.coset_shift {
                CosetShift::Zero => self.norm as u64 * j * j,
                CosetShift::Half => self.norm as u64 * (2 * j + 1) * (2 * j + 1) / 4,
            };
            if twice > limit as u64 {
                break;
            }
            let fixed = self.coset_shift == CosetShift::Zero && j == 0;
            out.push((twice as u32, fixed));
        }
        out
    }
}

pub fn lattice_dims(spec: LatticeSpec, cutoff: u32) -> DimSeries {
    let p = heisenberg_dims(1, Fixed::All, cutoff);
    let mut out = DimSeries::new(cutoff);
    for (g, fixed) in spec.orbits(2 * cutoff) {
        let copies = if fixed { 1 } else { 2 };
        for (t, d) in p.entries() {
            out.add(g + t, copies * d);
        }
    }
    out
}

/// `θ`-fixed part: the `γ = 0` summand gives the even Heisenberg part, every
/// orbit `{γ, -γ}` one copy of the Heisenberg space.
pub fn lattice_plus_dims(spec: LatticeSpec, cutoff: u32) -> DimSeries {
    let all = heisenberg_dims(1, Fixed::All, cutoff);
    let plus = heisenberg_dims(1, Fixed::ThetaPlus, cutoff);
    let mut out = DimSeries::new(cutoff);
    for (g, fixed) in spec.orbits(2 * cutoff) {
        let src = if fixed { &plus } else { &all };
        for (t, d) in src.entries() {
            out.add(g + t, d);
        }
    }
    out
}

/// Graded dimension of the symmetric square.
pub fn sym2_dims(s: &DimSeries) -> DimSeries {
    let mut out = DimSeries { cutoff_twice: s.cutoff_twice, dims: BTreeMap::new() };
    for (&a, &x) in &s.dims {
        for (&b, &y) in s.dims.range(a..) {
            if a == b {
                out.add(a + b, x * (x + 1) / 2);
            } else {
                out.add(a + b, x * y);
            }
        }
    }
    out
}

/// Exterior square, for the `Sym² + Λ² = ⊗²` identity.
pub fn alt2_dims(s: &DimSeries) -> DimSeries {
    let mut out = DimSeries { cutoff_twice: s.cutoff_twice, dims: BTreeMap::new() };
    for (&a, &x) in &s.dims {
        for (&b, &y) in s.dims.range(a..) {
            if a == b {
                out.add(a + b, x * x.saturating_sub(1) / 2);
            } else {
                out.add(a + b, x * y);
            }
        }
    }
    out
}

/// Both sides of the swap-orbifold decomposition for `M = ℤβ`, `⟨β,β⟩ = 4k`:
/// `Sym²(V_M)` against `V_{ℤβ₁} ⊗ V⁺_{ℤβ₂} + V_{½β₁+ℤβ₁} ⊗ V⁺_{½β₂+ℤβ₂}` with
/// `⟨βᵢ,βᵢ⟩ = 8k`.
pub fn decomposition_sides(k: u32, cutoff: u32) -> (DimSeries, DimSeries) {
    let m = LatticeSpec::new(4 * k, CosetShift::Zero);
    let lhs = sym2_dims(&lattice_dims(m, cutoff));
    let b = LatticeSpec::new(8 * k, CosetShift::Zero);
    let bh = LatticeSpec::new(8 * k, CosetShift::Half);
    let rhs = lattice_dims(b, cutoff)
        .tensor(&lattice_plus_dims(b, cutoff))
        .plus(&lattice_dims(bh, cutoff).tensor(&lattice_plus_dims(bh, cutoff)));
    (lhs, rhs)
}

pub fn decomposition_check(k: u32, cutoff: u32) -> CheckReport {
    let mut c = Checker::new(format!("lattice_square_decomposition(k={k}, N={cutoff})"));
    let (lhs, rhs) = decomposition_sides(k, cutoff);
    c.expect("both sides integrally graded", !lhs.has_half_integral() && !rhs.has_half_integral(), || {
        "half-integral weight present".into()
    });
    let (l, r) = (lhs.integral(), rhs.integral());
    let first_bad = (0..l.len()).find(|&n| l[n] != r[n]);
    c.expect(&format!("dimensions agree for n <= {cutoff}"), first_bad.is_none(), || {
        let n = first_bad.unwrap();
        format!("n={n}: symmetric square {} vs decomposition {}", l[n], r[n])
    });
    c.note(format!("dims: {l:?}"));
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force: enumerate multisets of colored parts.
    fn brute_colored(rank: u32, n: u32) -> [u64; 2] {
        fn rec(rank: u32, left: u32, max_part: u32, max_color: u32, parts: u32, out: &mut [u64; 2]) {
            if left == 0 {
                out[(parts % 2) as usize] += 1;
                return;
            }
            for p in (1..=left.min(max_part)).rev() {
                let top = if p == max_part { max_color } else { rank - 1 };
                for c in 0..=top {
                    rec(rank, left - p, p, c, parts + 1, out);
                }
            }
        }
        let mut out = [0, 0];
        rec(rank, n, n, rank - 1, 0, &mut out);
        out
    }

    #[test]
    fn partition_counts() {
        assert_eq!(heisenberg_dims(1, Fixed::All, 6).integral(), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(heisenberg_dims(1, Fixed::ThetaPlus, 1).at(1), 0);
        assert_eq!(heisenberg_dims(1, Fixed::ThetaMinus, 1).at(1), 1);
        for rank in 1..=3 {
            let plus = heisenberg_dims(rank, Fixed::ThetaPlus, 9);
            let minus = heisenberg_dims(rank, Fixed::ThetaMinus, 9);
            for n in 0..=9 {
                let [e, o] = brute_colored(rank, n);
                assert_eq!((plus.at(n), minus.at(n)), (e, o), "rank={rank} n={n}");
            }
        }
    }

    #[test]
    fn lattice_examples() {
        let l = lattice_dims(LatticeSpec::even(1), 4);
        assert_eq!((l.at(0), l.at(1)), (1, 3));
        assert_eq!(lattice_plus_dims(LatticeSpec::even(1), 4).at(1), 1);
        // ⟨β,β⟩ = 4k with k odd: the half coset sits at weights k/2 mod 1
        let h = lattice_dims(LatticeSpec::new(4, CosetShift::Half), 4);
        assert_eq!(h.at_twice(1), 2);
        assert!(h.has_half_integral());
    }

    #[test]
    fn symmetric_square_examples() {
        let h = heisenberg_dims(1, Fixed::All, 4);
        assert_eq!(sym2_dims(&h).at(2), 3);
        let mut vac = DimSeries::new(3);
        vac.add(0, 1);
        assert_eq!(sym2_dims(&vac).integral(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn json_pairs() {
        let h = lattice_dims(LatticeSpec::new(4, CosetShift::Half), 1);
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v[0], serde_json::json!([0.5, 2]));
        let p = heisenberg_dims(1, Fixed::All, 2);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[0,1],[1,1],[2,2]]");
    }

    #[test]
    fn decomposition_small_k() {
        for k in 1..=3 {
            assert!(decomposition_check(k, 10).passed());
        }
        let (l, r) = decomposition_sides(1, 0);
        assert_eq!((l.at(0), r.at(0)), (1, 1));
    }

    proptest! {
        #[test]
        fn eigenspaces_and_squares_add_up(rank in 1u32..4, cutoff in 0u32..12) {
            let all = heisenberg_dims(rank, Fixed::All, cutoff);
            let split = heisenberg_dims(rank, Fixed::ThetaPlus, cutoff).plus(&heisenberg_dims(rank, Fixed::ThetaMinus, cutoff));
            prop_assert_eq!(&all, &split);
            prop_assert_eq!(sym2_dims(&all).plus(&alt2_dims(&all)), all.tensor(&all));
        }

        #[test]
        fn plus_part_is_at_most_everything(norm_half in 1u32..5, cutoff in 0u32..14) {
            let spec = LatticeSpec::new(4 * norm_half, CosetShift::Zero);
            let all = lattice_dims(spec, cutoff);
            let plus = lattice_plus_dims(spec, cutoff);
            for n in 0..=cutoff {
                prop_assert!(plus.at(n) <= all.at(n));
            }
        }
    }
}
