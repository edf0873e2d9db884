use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::kernel::Rational;

/// Integer row with content removed and positive leading entry.
fn normalize(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    let mut lead_negative = None;
    for x in row.iter() {
        if !x.is_zero() {
            if lead_negative.is_none() {
                lead_negative = Some(x.is_negative());
            }
            g = g.gcd(x);
            if g.is_one() && lead_negative == Some(false) {
                return;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    if lead_negative == Some(true) {
        g = -g;
    }
    if !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Clears denominators of a rational row; the result is a nonzero multiple.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Row-echelon basis of a subspace of `ℚ^n`, kept over the integers with
/// fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    /// `(pivot column, row)` sorted by pivot.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Echelon {
        Echelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Eliminates every pivot column from `row`; the result is zero iff `row`
    /// lies in the span. The residue is a nonzero multiple of the projection
    /// along the stored rows.
    pub fn reduce(&self, row: &mut [BigInt]) {
        assert_eq!(row.len(), self.width, "row width");
        for (p, r) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let (a, b) = (r[*p].clone(), row[*p].clone());
            let g = a.gcd(&b);
            let (a, b) = (a / &g, b / &g);
            for (x, y) in row.iter_mut().zip(r) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &*x * &a - y * &b;
                }
            }
            normalize(row);
        }
    }

    /// The projection of `row` along the stored rows onto the non-pivot
    /// coordinates. Linear in `row`, unlike [`Echelon::reduce`].
    pub fn residue(&self, row: &[Rational]) -> Vec<Rational> {
        assert_eq!(row.len(), self.width, "row width");
        let mut row = row.to_vec();
        for (p, r) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = &row[*p] / Rational::from_integer(r[*p].clone());
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * Rational::from_integer(y.clone());
                }
            }
        }
        row
    }

    pub fn contains(&self, row: &[BigInt]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Zero::is_zero)
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: Vec<BigInt>) -> bool {
        if self.is_full() {
            return false;
        }
        let mut row = row;
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { return false };
        normalize(&mut row);
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, row));
        true
    }

    /// Reduced row-echelon form over `ℚ` with unit pivots.
    pub fn rref(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|(p, r)| {
                let lead = r[*p].clone();
                r.iter().map(|x| Rational::new(x.clone(), lead.clone())).collect()
            })
            .collect();
        let pivots = self.pivots();
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for r in above.iter_mut() {
                if r[p].is_zero() {
                    continue;
                }
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(pivot_row).skip(p) {
                    *x -= &f * y;
                }
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(ints(&[2, 4, 6])));
        assert!(!e.insert(ints(&[1, 2, 3])));
        assert!(e.insert(ints(&[0, 3, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&ints(&[2, 7, 7])));
        assert!(!e.contains(&ints(&[0, 0, 1])));
        assert!(e.insert(ints(&[0, 0, 5])));
        assert!(e.is_full());
    }

    #[test]
    fn rref_has_unit_pivots() {
        let mut e = Echelon::new(3);
        e.insert(ints(&[2, 4, 6]));
        e.insert(ints(&[0, 3, 1]));
        let r = e.rref();
        assert_eq!(r[0], vec![rat(1, 1), rat(0, 1), rat(7, 3)]);
        assert_eq!(r[1], vec![rat(0, 1), rat(1, 1), rat(1, 3)]);
    }

    #[test]
    fn residue_is_linear_projection() {
        let mut e = Echelon::new(3);
        e.insert(ints(&[2, 4, 6]));
        let r = e.residue(&[rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(r, vec![rat(0, 1), rat(-2, 1), rat(-3, 1)]);
        let twice = e.residue(&[rat(2, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(twice, vec![rat(0, 1), rat(-4, 1), rat(-6, 1)]);
    }

    #[test]
    fn clears_denominators() {
        assert_eq!(integer_row(&[rat(1, 2), rat(-2, 3), rat(0, 1)]), ints(&[3, -4, 0]));
    }

    proptest! {
        #[test]
        fn combinations_are_members(
            rows in proptest::collection::vec(proptest::collection::vec(-5i64..5, 5), 1..4),
            coefs in proptest::collection::vec(-3i64..3, 4),
        ) {
            let mut e = Echelon::new(5);
            for r in &rows {
                e.insert(ints(r));
            }
            let mut combo = vec![0i64; 5];
            for (r, c) in rows.iter().zip(&coefs) {
                for (x, y) in combo.iter_mut().zip(r) {
                    *x += c * y;
                }
            }
            prop_assert!(e.contains(&ints(&combo)));
            prop_assert!(e.rank() <= rows.len());
        }
    }
}
