use serde::Serialize;

use crate::fock::{Engine, FockVector, Voa};
use crate::kernel::Rational;

use super::c2::{residue_rank, C2Oracle, Residue};
use super::tensor::eta;
use super::OrbifoldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    StabilizedByCutoff,
    StillGrowing,
}

/// Whether `η(x_(-n) y)` vanishes in the quotient by `C₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeWitness {
    pub n: u32,
    pub weight: u32,
    pub vanishes: bool,
}

/// Dimensions of `span{ η(x_(-k) y) mod C₂ : 1 <= k <= n }` for `n` up to the cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub voa: String,
    pub x: String,
    pub y: String,
    pub cutoff: u32,
    pub window: u32,
    /// `[n, dim]` pairs.
    pub dims: Vec<(u32, usize)>,
    pub stabilized_at: Option<u32>,
    pub verdict: Verdict,
    pub witnesses: Vec<ProbeWitness>,
}

/// Smallest `n0` after which the series is constant, provided at least
/// `window` zero increments follow it.
pub fn stabilization(dims: &[(u32, usize)], window: u32) -> Option<u32> {
    let (last_n, last_d) = *dims.last()?;
    let mut n0 = last_n;
    for &(n, d) in dims.iter().rev() {
        if d != last_d {
            break;
        }
        n0 = n;
    }
    (last_n - n0 >= window).then_some(n0)
}

pub fn d_probe<V: Voa<S = Rational>>(
    c2: &impl C2Oracle,
    e: &Engine<V>,
    x: &FockVector<Rational>,
    y: &FockVector<Rational>,
    cutoff: u32,
    window: u32,
) -> Result<ProbeResult, OrbifoldError> {
    if !x.is_homogeneous() || !y.is_homogeneous() {
        return Err(OrbifoldError::NotHomogeneous);
    }
    assert!(window >= 1, "window must be positive");
    let top = (x.max_weight() + y.max_weight() + cutoff).saturating_sub(1);
    c2.prepare(top);
    let mut residues: Vec<Residue> = Vec::new();
    let mut dims = Vec::new();
    let mut witnesses = Vec::new();
    for n in 1..=cutoff {
        let v = eta(&e.product(x, -(n as i64), y));
        let r = c2.residue(&v)?;
        let weight = x.max_weight() + y.max_weight() + n - 1;
        witnesses.push(ProbeWitness { n, weight, vanishes: r.is_zero() });
        residues.push(r);
        dims.push((n, residue_rank(&residues)));
    }
    let stabilized_at = stabilization(&dims, window);
    Ok(ProbeResult {
        voa: e.voa().label(),
        x: x.to_string(),
        y: y.to_string(),
        cutoff,
        window,
        dims,
        stabilized_at,
        verdict: if stabilized_at.is_some() { Verdict::StabilizedByCutoff } else { Verdict::StillGrowing },
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Heisenberg;
    use crate::orbifold::FactorizedC2;

    #[test]
    fn stabilization_needs_a_full_window() {
        let d = |v: &[usize]| v.iter().enumerate().map(|(i, &x)| (i as u32 + 1, x)).collect::<Vec<_>>();
        assert_eq!(stabilization(&d(&[1, 2, 2, 2, 2, 2]), 4), Some(2));
        assert_eq!(stabilization(&d(&[1, 2, 2, 2, 2]), 4), None);
        assert_eq!(stabilization(&d(&[1, 2, 3]), 1), None);
    }

    #[test]
    fn vacuum_caps_at_one() {
        let v = Heisenberg::new(1);
        let e = Engine::new(v.clone());
        let c2 = FactorizedC2::new(&v);
        let y = e.generator(0);
        let r = d_probe(&c2, &e, &FockVector::vacuum(), &y, 8, 4).unwrap();
        assert!(r.dims.iter().all(|&(_, d)| d == 1));
        assert_eq!(r.verdict, Verdict::StabilizedByCutoff);
        assert_eq!(r.stabilized_at, Some(1));
    }

    #[test]
    fn generator_probe_and_json_shape() {
        let v = Heisenberg::new(1);
        let e = Engine::new(v.clone());
        let c2 = FactorizedC2::new(&v);
        let x = e.generator(0);
        let r = d_probe(&c2, &e, &x, &x, 12, 4).unwrap();
        let survivors: Vec<u32> = r.witnesses.iter().filter(|w| !w.vanishes).map(|w| w.n).collect();
        assert_eq!(survivors, vec![1, 3, 5, 7]);
        assert_eq!(r.stabilized_at, Some(7));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdict"], "stabilized-by-cutoff");
        assert_eq!(json["dims"][0], serde_json::json!([1, 1]));
        for key in ["voa", "x", "y", "cutoff", "dims", "stabilized_at", "witnesses"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }
}
