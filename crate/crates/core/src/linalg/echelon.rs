//! Exact subspaces of Q^n.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polycore::Rat;

/// Scale a rational vector to a primitive integer vector with positive
/// leading entry. Returns `None` for the zero vector.
pub fn primitive_integer(v: &[Rat]) -> Option<Vec<BigInt>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let w: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    make_primitive(w)
}

pub fn make_primitive(mut w: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let lead = w.iter().find(|x| !x.is_zero())?.clone();
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if lead.is_negative() { -g } else { g };
    if !g.is_one() {
        for x in w.iter_mut() {
            *x /= &g;
        }
    }
    Some(w)
}

/// Fraction-free semi-echelon basis with primitive integer rows.
#[derive(Clone, Debug)]
pub struct IntEchelon {
    n: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    pub fn new(n: usize) -> Self {
        IntEchelon { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Option<Vec<BigInt>> {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&v[c]);
            let a = &row[c] / &g;
            let b = &v[c] / &g;
            for (x, r) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            v = make_primitive(v)?;
        }
        make_primitive(v)
    }

    /// Insert v, returning the primitive residue when v was independent.
    pub fn insert(&mut self, v: Vec<BigInt>) -> Option<Vec<BigInt>> {
        debug_assert_eq!(v.len(), self.n);
        let r = self.reduce(v)?;
        let c = r.iter().position(|x| !x.is_zero()).unwrap();
        self.rows.push(r.clone());
        self.pivots.push(c);
        Some(r)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v.to_vec()).is_none()
    }
}

/// A subspace of Q^n held as its canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSubspace {
    n: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RatSubspace {
    pub fn full(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
        RatSubspace { n, rows, pivots: (0..n).collect() }
    }

    /// Span of the given vectors.
    pub fn span(n: usize, vectors: &[Vec<Rat>]) -> Self {
        let mut m: Vec<Vec<Rat>> = vectors.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        RatSubspace { n, rows: m, pivots }
    }

    /// Trust `rows` as an RREF (used after rational reconstruction).
    pub fn from_rref(n: usize, rows: Vec<Vec<Rat>>) -> Option<Self> {
        let mut pivots = Vec::with_capacity(rows.len());
        for row in &rows {
            let c = row.iter().position(|x| !x.is_zero())?;
            if !row[c].is_one() || pivots.last().is_some_and(|&p| p >= c) {
                return None;
            }
            pivots.push(c);
        }
        for (row, &c) in rows.iter().zip(&pivots) {
            for (other, &c2) in rows.iter().zip(&pivots) {
                if c2 != c && !other[c].is_zero() {
                    return None;
                }
            }
            debug_assert!(row.len() == n);
        }
        Some(RatSubspace { n, rows, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if w[c].is_zero() {
                continue;
            }
            let f = w[c].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        let w: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        self.contains(&w)
    }

    /// Indices k with the unit vector e_k inside the subspace.
    pub fn unit_vectors(&self) -> Vec<usize> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(|(row, &c)| row.iter().enumerate().all(|(j, x)| j == c || x.is_zero()))
            .map(|(_, &c)| c)
            .collect()
    }
}
