use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, Rational};

/// The three symbols the coefficient field is built from.
///
/// `Z` is the integer index a [`ParityExpr`](super::ParityExpr) is a function
/// of; `K` is the weight `k` of the vector in the Virasoro induction; `C` is
/// the central charge `c_V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Z,
    K,
    C,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Z, Var::K, Var::C];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::K => "k",
            Var::C => "c_V",
        }
    }
}

/// Exponent vector over `(z, k, c_V)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Exponent(pub [u32; 3]);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn of(&self, v: Var) -> u32 {
        self.0[v.idx()]
    }

    fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn plus(&self, other: &Exponent) -> Exponent {
        Exponent([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    fn minus(&self, other: &Exponent) -> Exponent {
        Exponent([self.0[0] - other.0[0], self.0[1] - other.0[1], self.0[2] - other.0[2]])
    }

    fn single(v: Var, e: u32) -> Exponent {
        let mut x = [0; 3];
        x[v.idx()] = e;
        Exponent(x)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ in `z`, `k`, `c_V`.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Exponent::default(), c);
        p
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Exponent::single(v, 1), Rational::one())
    }

    pub fn monomial(e: Exponent, c: Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(e, c);
        p
    }

    /// `v + shift`, the workhorse for symbolic indices.
    pub fn var_plus(v: Var, shift: i64) -> Poly {
        &Poly::var(v) + &Poly::int(shift)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(iter: I) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&Exponent::default()).cloned()
        } else {
            None
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e.of(v) > 0)
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e.of(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn mul_var_pow(&self, v: Var, e: u32) -> Poly {
        let shift = Exponent::single(v, e);
        Poly {
            terms: self.terms.iter().map(|(x, c)| (x.plus(&shift), c.clone())).collect(),
        }
    }

    /// Coefficients of `self` as a polynomial in `v`; entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree(v) as usize + 1];
        for (e, c) in &self.terms {
            let d = e.of(v);
            let mut rest = *e;
            rest.0[v.idx()] = 0;
            out[d as usize].add_term(rest, c.clone());
        }
        out
    }

    fn lc_in(&self, v: Var) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        if !self.uses(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn eval(&self, v: Var, value: &Rational) -> Poly {
        self.substitute(v, &Poly::constant(value.clone()))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((re, rc)) = rem.leading() {
            if !de.divides(re) {
                return None;
            }
            let t = Poly::monomial(re.minus(de), rc / dc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        // c_V outermost, z innermost: denominators only ever involve z, so
        // most gcds collapse to univariate gcds over ℚ.
        let main = [Var::C, Var::K, Var::Z]
            .into_iter()
            .find(|v| a.uses(*v) || b.uses(*v))
            .expect("non-constant polynomial uses a variable");
        match (a.uses(main), b.uses(main)) {
            (true, false) => gcd_with_coeffs(a, main, b),
            (false, true) => gcd_with_coeffs(b, main, a),
            _ => {
                if main == Var::Z {
                    return univariate_gcd(a, b);
                }
                let ca = content(a, main);
                let cb = content(b, main);
                let pa = a.div_exact(&ca).expect("content divides");
                let pb = b.div_exact(&cb).expect("content divides");
                let g = primitive_prs(pa, pb, main);
                (&Poly::gcd(&ca, &cb) * &g).monic()
            }
        }
    }
}

/// gcd of `other` (free of `v`) with every coefficient of `a` in `v`.
fn gcd_with_coeffs(a: &Poly, v: Var, other: &Poly) -> Poly {
    let mut g = other.monic();
    for c in a.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = Poly::gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn content(a: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for c in a.coeffs_in(v).into_iter().filter(|c| !c.is_zero()) {
        g = Poly::gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive_part(a: &Poly, v: Var) -> Poly {
    a.div_exact(&content(a, v)).expect("content divides")
}

fn pseudo_rem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = b.degree(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree(v) >= db && r.uses(v) {
        let dr = r.degree(v);
        let lr = r.lc_in(v);
        r = &(&lb * &r) - &(&lr * &b.mul_var_pow(v, dr - db));
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if !r.uses(v) {
            return Poly::one();
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

fn univariate_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.monic(), b.monic());
    if a.degree(Var::Z) < b.degree(Var::Z) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

fn univariate_rem(a: &Poly, b: &Poly) -> Poly {
    let db = b.degree(Var::Z);
    let lb = b.lc_in(Var::Z).constant_value().expect("univariate");
    let mut r = a.clone();
    while !r.is_zero() && r.degree(Var::Z) >= db {
        let dr = r.degree(Var::Z);
        let lr = r.lc_in(Var::Z).constant_value().expect("univariate");
        r = &r - &b.mul_var_pow(Var::Z, dr - db).scale(&(lr / &lb));
    }
    r
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.plus(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.degree() == 0 {
                factors.push(if mag.is_integer() {
                    mag.numer().to_string()
                } else {
                    format_rational(&mag)
                });
            }
            for v in Var::ALL {
                match e.of(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    d => factors.push(format!("{}^{}", v.name(), d)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}


/// One serialized term: exponents of `(z, k, c_V)` and a `p/q` coefficient.
#[derive(Serialize, Deserialize)]
struct TermRecord {
    exp: [u32; 3],
    coeff: String,
}

// Canonical expanded term list, highest term first.
impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermRecord { exp: e.0, coeff: format_rational(c) })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        let mut terms = Vec::with_capacity(recs.len());
        for r in recs {
            let c = super::rational::parse_rational(&r.coeff).map_err(serde::de::Error::custom)?;
            terms.push((Exponent(r.exp), c));
        }
        Ok(Poly::from_terms(terms))
    }
}

#[cfg(test)]
mod serde_tests {
    use super::*;

    #[test]
    fn term_list_round_trip() {
        let p = &(&Poly::var(Var::Z).pow(2) - &Poly::var(Var::K).scale(&super::super::rat(3, 4))) + &Poly::int(5);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"exp":[2,0,0],"coeff":"1/1"},{"exp":[0,1,0],"coeff":"-3/4"},{"exp":[0,0,0],"coeff":"5/1"}]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
