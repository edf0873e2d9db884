use std::fmt;

use serde::{Deserialize, Serialize};

/// One creation mode: generator `gen` at level `level`, i.e. `a_(-level)` for a
/// weight-one generator or `L_(-level)` for the Virasoro vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode {
    pub gen: u8,
    pub level: u32,
}

/// A normal-ordered product of creation modes applied to the vacuum.
///
/// Modes are sorted by level descending, then generator ascending; the empty
/// monomial is the vacuum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<Mode>);

fn canonical(a: &Mode, b: &Mode) -> std::cmp::Ordering {
    b.level.cmp(&a.level).then(a.gen.cmp(&b.gen))
}

impl Monomial {
    pub fn vacuum() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn new(mut modes: Vec<Mode>) -> Monomial {
        modes.sort_by(canonical);
        Monomial(modes)
    }

    /// From `(gen, level)` pairs in any order.
    pub fn from_pairs(pairs: &[(u8, u32)]) -> Monomial {
        Monomial::new(pairs.iter().map(|&(gen, level)| Mode { gen, level }).collect())
    }

    /// From modes already in canonical order; only checked in debug builds.
    pub(crate) fn from_sorted(modes: Vec<Mode>) -> Monomial {
        debug_assert!(modes.windows(2).all(|w| canonical(&w[0], &w[1]).is_le()));
        Monomial(modes)
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|m| m.level).sum()
    }

    /// Inserts a mode at its canonical position.
    pub fn with(&self, mode: Mode) -> Monomial {
        let pos = self.0.partition_point(|m| canonical(m, &mode).is_le());
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0[..pos]);
        v.push(mode);
        v.extend_from_slice(&self.0[pos..]);
        Monomial(v)
    }

    pub fn without(&self, idx: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(idx);
        Monomial(v)
    }

    /// Leading mode and the remaining monomial.
    pub fn split_first(&self) -> Option<(Mode, Monomial)> {
        let (first, rest) = self.0.split_first()?;
        Some((*first, Monomial(rest.to_vec())))
    }

    /// Product of commuting modes.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    pub fn count_gen(&self, gen: u8) -> usize {
        self.0.iter().filter(|m| m.gen == gen).count()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}(-{})", m.gen, m.level)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse monomial {0:?}: expected \"1\" or modes like \"0(-2) 1(-1)\"")]
pub struct ParseMonomialError(pub String);

/// Parses the [`fmt::Display`] form: `1` or space-separated `gen(-level)`.
impl std::str::FromStr for Monomial {
    type Err = ParseMonomialError;

    fn from_str(s: &str) -> Result<Monomial, ParseMonomialError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::vacuum());
        }
        let err = || ParseMonomialError(s.to_string());
        let mut modes = Vec::new();
        for tok in s.split_whitespace() {
            let (gen, rest) = tok.split_once("(-").ok_or_else(err)?;
            let level = rest.strip_suffix(')').ok_or_else(err)?;
            let gen: u8 = gen.parse().map_err(|_| err())?;
            let level: u32 = level.parse().map_err(|_| err())?;
            if level == 0 {
                return Err(err());
            }
            modes.push(Mode { gen, level });
        }
        if modes.is_empty() {
            return Err(err());
        }
        Ok(Monomial::new(modes))
    }
}

/// All multisets of modes with generators `0..gens`, levels `>= min_level`
/// and total weight `w`, in canonical order.
pub fn monomials_of_weight(gens: u8, min_level: u32, w: u32) -> Vec<Monomial> {
    fn rec(gens: u8, min_level: u32, left: u32, cap: Mode, cur: &mut Vec<Mode>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        let top = left.min(cap.level);
        for level in (min_level..=top).rev() {
            let first_gen = if level == cap.level { cap.gen } else { 0 };
            for gen in first_gen..gens {
                let m = Mode { gen, level };
                cur.push(m);
                rec(gens, min_level, left - level, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if w == 0 {
        out.push(Monomial::vacuum());
        return out;
    }
    rec(gens, min_level, w, Mode { gen: 0, level: w }, &mut Vec::new(), &mut out);
    out
}
