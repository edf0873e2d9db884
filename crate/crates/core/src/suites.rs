//! Grid suites over the Fock engine and the orbifold oracle, each returning
//! [`CheckReport`]s. The CLI and the acceptance tests both run these.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chars;
use crate::fock::{
    associativity_defect, commutator_defect, skew_symmetry_defect, skew_symmetry_extra_factorial_defect, Engine,
    FockVector, Heisenberg, Monomial, Virasoro, Voa,
};
use crate::kernel::Rational;
use crate::orbifold::{
    d_probe, eta, nested_product_reduction, phi2_derivation_rule, quartic_product_check, translate_check,
    zero_mode_check, C2Oracle, FactorizedC2, ProbeResult, Verdict,
};
use crate::report::{CheckReport, Checker};

/// Ranges for the identity grids: inputs `a, b` up to weight `max_ab`, `u`
/// up to `max_u`, mode indices `1..=max_mn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IdentityGrid {
    pub max_ab: u32,
    pub max_u: u32,
    pub max_mn: i64,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid { max_ab: 3, max_u: 5, max_mn: 4 }
    }
}

fn basis_upto<V: Voa>(v: &V, w: u32) -> Vec<FockVector<V::S>> {
    (0..=w).flat_map(|k| v.basis(k)).map(FockVector::from_monomial).collect()
}

/// Counts cases and keeps the lexicographically first failure, so reports do
/// not depend on the thread schedule.
#[derive(Default)]
struct Tally {
    cases: usize,
    first_failure: Option<(usize, String)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    fn record(&mut self, key: usize, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.first_failure.as_ref().is_none_or(|(k, _)| key < *k) {
            self.first_failure = Some((key, witness()));
        }
    }

    fn report(self, ck: &mut Checker, label: &str) {
        let ok = self.first_failure.is_none();
        ck.expect(&format!("{label} ({} cases)", self.cases), ok, || self.first_failure.unwrap().1);
    }
}

fn associativity_tally<V: Voa>(
    e: &Engine<V>,
    abs: &[FockVector<V::S>],
    us: &[FockVector<V::S>],
    max_mn: i64,
) -> Tally {
    let pairs: Vec<(usize, usize)> = (0..abs.len()).flat_map(|i| (0..abs.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            for (k, u) in us.iter().enumerate() {
                for m in 1..=max_mn {
                    for n in 1..=max_mn {
                        let key = (((i * abs.len() + j) * us.len() + k) * 64 + m as usize) * 64 + n as usize;
                        let d = associativity_defect(e, &abs[i], &abs[j], u, m, n);
                        t.record(key, d.is_zero(), || {
                            format!("a={} b={} u={u} m={m} n={n}: defect {d}", abs[i], abs[j])
                        });
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn commutator_tally<V: Voa>(
    e: &Engine<V>,
    abs: &[FockVector<V::S>],
    us: &[FockVector<V::S>],
    max_mn: i64,
) -> Tally {
    let pairs: Vec<(usize, usize)> = (0..abs.len()).flat_map(|i| (0..abs.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            for (k, u) in us.iter().enumerate() {
                for m in 1..=max_mn {
                    for n in 1..=max_mn {
                        let key = (((i * abs.len() + j) * us.len() + k) * 64 + m as usize) * 64 + n as usize;
                        let d = commutator_defect(e, &abs[i], &abs[j], u, m, n);
                        t.record(key, d.is_zero(), || {
                            format!("a={} b={} c={u} m={m} n={n}: defect {d}", abs[i], abs[j])
                        });
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Skew symmetry over `ms`, either in the weighted form with the extra
/// `1/i!` or in the plain form.
fn skew_tally<V: Voa>(e: &Engine<V>, abs: &[FockVector<V::S>], ms: &[i64], extra_factorial: bool) -> Tally {
    let mut t = Tally::default();
    for (i, a) in abs.iter().enumerate() {
        for (j, b) in abs.iter().enumerate() {
            for (k, &m) in ms.iter().enumerate() {
                let d = if extra_factorial {
                    skew_symmetry_extra_factorial_defect(e, a, b, m)
                } else {
                    skew_symmetry_defect(e, a, b, m)
                };
                t.record((i * abs.len() + j) * ms.len() + k, d.is_zero(), || format!("a={a} b={b} m={m}: defect {d}"));
            }
        }
    }
    t
}

/// Associativity expansion, commutator formula and skew symmetry in the
/// orthonormal rank-2 Heisenberg algebra on the full grid.
///
/// The skew-symmetry line is the weighted form
/// `a_(m) b = Σ_i (-1)^(m-1-i)/i! (b_(m+i) a)_(-1-i) 1` on `1 <= m <= max_mn`;
/// the same form on negative `m` and the unweighted form are reported as
/// separate checks.
pub fn heisenberg_identities(grid: IdentityGrid) -> Vec<CheckReport> {
    let v = Heisenberg::new(2);
    let e = Engine::new(v.clone());
    let abs = basis_upto(&v, grid.max_ab);
    let us = basis_upto(&v, grid.max_u);
    let ms: Vec<i64> = (1..=grid.max_mn).collect();
    let neg: Vec<i64> = (-grid.max_mn..=0).collect();
    let tag = format!("rank-2 heisenberg, wt(a,b)<={}, wt(u)<={}, 1<=m,n<={}", grid.max_ab, grid.max_u, grid.max_mn);

    let mut out = Vec::new();
    let mut ck = Checker::new("associativity_expansion");
    ck.note(tag.clone());
    associativity_tally(&e, &abs, &us, grid.max_mn).report(&mut ck, "expansion of (a_(-m) b_(-n) 1)_(-1) u");
    out.push(ck.finish());

    let mut ck = Checker::new("commutator_formula");
    ck.note(tag.clone());
    commutator_tally(&e, &abs, &us, grid.max_mn).report(&mut ck, "a_(m) b_(n) c - b_(n) a_(m) c");
    out.push(ck.finish());

    let mut ck = Checker::new("skew_symmetry");
    ck.note(tag.clone());
    skew_tally(&e, &abs, &ms, true).report(&mut ck, "weighted skew symmetry, positive m");
    out.push(ck.finish());

    let mut ck = Checker::new("skew_symmetry_nonpositive_m");
    ck.note(format!("rank-2 heisenberg, wt(a,b)<={}, {}<=m<=0", grid.max_ab, -grid.max_mn));
    skew_tally(&e, &abs, &neg, true).report(&mut ck, "weighted skew symmetry");
    out.push(ck.finish());

    let mut ck = Checker::new("skew_symmetry_unweighted");
    ck.note(format!("rank-2 heisenberg, wt(a,b)<={}, {}<=m<={}", grid.max_ab, -grid.max_mn, grid.max_mn));
    let all: Vec<i64> = (-grid.max_mn..=grid.max_mn).collect();
    skew_tally(&e, &abs, &all, false).report(&mut ck, "a_(m) b = Σ_i (-1)^(m-1-i) (b_(m+i) a)_(-1-i) 1");
    out.push(ck.finish());
    out
}

/// The same three identities for `a = b = ω` in the Virasoro algebra with
/// symbolic central charge, `u` ranging over monomials up to weight `max_u`.
pub fn virasoro_identities(max_u: u32, max_mn: i64) -> Vec<CheckReport> {
    let v = Virasoro::symbolic();
    let e = Engine::new(v.clone());
    let w = vec![e.generator(0)];
    let us = basis_upto(&v, max_u);
    let ms: Vec<i64> = (1..=max_mn).collect();
    let tag = format!("virasoro over Q(c), a=b=omega, wt(u)<={max_u}, 1<=m,n<={max_mn}");

    let mut ck = Checker::new("virasoro_identities");
    ck.note(tag);
    associativity_tally(&e, &w, &us, max_mn).report(&mut ck, "expansion of (ω_(-m) ω_(-n) 1)_(-1) u");
    commutator_tally(&e, &w, &us, max_mn).report(&mut ck, "ω_(m) ω_(n) c - ω_(n) ω_(m) c");
    skew_tally(&e, &w, &ms, true).report(&mut ck, "weighted skew symmetry, positive m");
    vec![ck.finish()]
}

/// Membership facts in the rank-1 free-boson orbifold: which `η(x_(-m) x)`
/// lie in `C₂`, and `η(L_{-1} u) ∈ C₂` for every basis `u`.
pub fn vanishing_suite(max_m: i64, max_translate_weight: u32) -> Vec<CheckReport> {
    let v = Heisenberg::new(1);
    let e = Engine::new(v.clone());
    let c2 = FactorizedC2::new(&v);
    let x = e.generator(0);
    c2.prepare(max_m.max(max_translate_weight as i64 + 1) as u32);

    let mut ck = Checker::new("generator_products_in_c2");
    ck.note(format!("rank-1 heisenberg orbifold, 1<=m<={max_m}"));
    let mut survivors = Vec::new();
    for m in 1..=max_m {
        let inside = c2.in_c2(&eta(&e.product(&x, -m, &x))).expect("homogeneous");
        if !inside {
            survivors.push(m);
        }
        if m % 2 == 0 || m >= 8 {
            ck.expect(&format!("η(x_(-{m}) x) ∈ C₂"), inside, || format!("m={m}: residue nonzero"));
        }
    }
    ck.note(format!("m with η(x_(-m) x) ∉ C₂: {survivors:?}"));
    let mut out = vec![ck.finish()];

    let mut ck = Checker::new("translates_in_c2");
    let mut t = Tally::default();
    for (i, u) in basis_upto(&v, max_translate_weight).iter().enumerate() {
        let ok = translate_check(&c2, &e, u).expect("homogeneous");
        t.record(i, ok, || format!("u={u}"));
    }
    t.report(&mut ck, &format!("η(L_(-1) u) ∈ C₂ for wt(u) <= {max_translate_weight}"));
    out.push(ck.finish());
    out
}

/// `η(x_(-m) x_(-n) 1)_(-1) η(x_(-p) x) ≡ 2 η(x_(-m) x_(-n) x_(-p) x) + h_{m,n,p} η(x_(-m-n-p) x)`
/// modulo `C₂`, with the symbolic constant `h`.
pub fn quartic_product_suite(max_mn: i64, max_p: i64) -> CheckReport {
    let v = Heisenberg::new(1);
    let e = Engine::new(v.clone());
    let c2 = FactorizedC2::new(&v);
    let x = e.generator(0);
    let mut ck = Checker::new("quartic_product_identity");
    ck.note(format!("rank-1 heisenberg orbifold, 2<=m,n<={max_mn}, 1<=p<={max_p}"));
    let mut t = Tally::default();
    for m in 2..=max_mn {
        for n in 2..=max_mn {
            for p in 1..=max_p {
                let ok = quartic_product_check(&c2, &e, &x, m, n, p).expect("homogeneous");
                t.record(((m * 16 + n) * 16 + p) as usize, ok, || format!("m={m} n={n} p={p}"));
            }
        }
    }
    t.report(&mut ck, "identity modulo C₂");
    ck.finish()
}

/// `D(ω, ω)` probe for the `c = 1` free boson.
pub fn omega_probe(cutoff: u32, window: u32) -> (ProbeResult, CheckReport) {
    let v = Heisenberg::new(1);
    omega_probe_on(&Engine::new(v.clone()), &FactorizedC2::new(&v), cutoff, window)
}

/// `D(ω, ω)` probe on a given Heisenberg engine and its orbifold oracle.
pub fn omega_probe_on(
    e: &Engine<Heisenberg>,
    c2: &FactorizedC2,
    cutoff: u32,
    window: u32,
) -> (ProbeResult, CheckReport) {
    let mut ck = Checker::new("omega_probe");
    let w = e.voa().conformal_vector();
    let r = d_probe(c2, e, &w, &w, cutoff, window).expect("homogeneous");
    ck.note(format!("{}: dims {:?}", r.voa, r.dims));
    ck.expect(
        &format!("dims stabilize by cutoff {cutoff} with window {window}"),
        r.verdict == Verdict::StabilizedByCutoff,
        || format!("still growing: {:?}", r.dims),
    );
    if let Some(n0) = r.stabilized_at {
        ck.note(format!("stabilized at n={n0}"));
    }
    (r, ck.finish())
}

/// Spot checks of the general membership rules on a random rank-2 sample:
/// `φ₂(x_(-n) y, z) + φ₂(y, x_(-n) z) ∈ C₂`, the nested product reduction,
/// and stability of `C₂` membership under zero modes.
pub fn orbifold_rules(samples: usize, seed: u64) -> CheckReport {
    let v = Heisenberg::new(2);
    let e = Engine::new(v.clone());
    let c2 = FactorizedC2::new(&v);
    let pool: Vec<FockVector<Rational>> = (1..=2).flat_map(|w| v.basis(w)).map(FockVector::from_monomial).collect();
    let mut ck = Checker::new("orbifold_membership_rules");
    ck.note(format!("rank-2 heisenberg orbifold, {samples} samples, seed {seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = |n: usize| rng.gen_range(0..n);
    let (mut t1, mut t2, mut t3) = (Tally::default(), Tally::default(), Tally::default());
    for s in 0..samples {
        let (x, y, z) = (&pool[next(pool.len())], &pool[next(pool.len())], &pool[next(pool.len())]);
        let n = 2 + next(3) as i64;
        let ok = phi2_derivation_rule(&c2, &e, x, y, z, n).expect("homogeneous");
        t1.record(s, ok, || format!("x={x} y={y} z={z} n={n}"));
        let (m, n) = (1 + next(3) as i64, 1 + next(3) as i64);
        let ok = nested_product_reduction(&c2, &e, x, y, m, n).expect("homogeneous");
        t2.record(s, ok, || format!("x={x} y={y} m={m} n={n}"));
        let u = e.product(y, -(1 + next(4) as i64), z);
        let ok = zero_mode_check(&c2, &e, x, &u).expect("homogeneous");
        t3.record(s, ok, || format!("a={x} u={u}"));
    }
    t1.report(&mut ck, "φ₂ derivation rule");
    t2.report(&mut ck, "nested product reduction");
    t3.report(&mut ck, "zero modes preserve C₂");
    ck.finish()
}

pub fn characters_suite(ks: &[u32], cutoff: u32) -> Vec<CheckReport> {
    ks.iter().map(|&k| chars::decomposition_check(k, cutoff)).collect()
}

/// A vector named on the command line: `vacuum`, `gen`/`genK`, `omega`, or a
/// monomial such as `0(-2) 1(-1)`.
pub fn named_vector<V: Voa>(e: &Engine<V>, name: &str, omega: Option<FockVector<V::S>>) -> Result<FockVector<V::S>, String> {
    let name = name.trim();
    match name {
        "vacuum" | "1" => return Ok(FockVector::vacuum()),
        "omega" => return omega.ok_or_else(|| format!("no conformal vector for {}", e.voa().label())),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("gen") {
        let g: u8 = if k.is_empty() { 0 } else { k.parse().map_err(|_| format!("bad generator name {name:?}"))? };
        if g >= e.voa().generators() {
            return Err(format!("generator {g} out of range for {}", e.voa().label()));
        }
        return Ok(e.generator(g));
    }
    let m: Monomial = name.parse().map_err(|err: crate::fock::ParseMonomialError| err.to_string())?;
    if m.modes().iter().any(|md| md.gen >= e.voa().generators() || md.level < e.voa().min_level()) {
        return Err(format!("monomial {m} is not a basis vector of {}", e.voa().label()));
    }
    Ok(FockVector::from_monomial(m))
}
