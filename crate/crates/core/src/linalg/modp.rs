//! Arithmetic modulo the Mersenne prime 2^61 - 1 and a reduced row echelon
//! form over that field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::polycore::Rat;

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let s = lo + hi;
    let s = (s & P) + (s >> 61);
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_i64(v: i64) -> u64 {
    let r = v.rem_euclid(P as i64);
    r as u64
}

pub fn from_bigint(v: &BigInt) -> u64 {
    let p = BigInt::from(P);
    v.mod_floor(&p).to_u64().unwrap()
}

/// `None` when the denominator is divisible by P.
pub fn from_rat(v: &Rat) -> Option<u64> {
    let d = from_bigint(v.denom());
    (d != 0).then(|| mul(from_bigint(v.numer()), inv(d)))
}

/// Recover n/d with |n|, d below sqrt(P/2) from its residue.
pub fn rational_reconstruct(a: u64) -> Option<Rat> {
    let bound: i128 = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    let r = Rat::new(BigInt::from(n), BigInt::from(d));
    // residue check guards against a non-unique answer
    (from_rat(&r) == Some(a)).then_some(r)
}

/// Reduced row echelon form over GF(P), grown one vector at a time.
#[derive(Clone, Debug)]
pub struct ModpEchelon {
    n: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl ModpEchelon {
    pub fn new(n: usize) -> Self {
        ModpEchelon { n, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; n] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = sub(*x, mul(f, r));
                }
            }
        }
    }

    /// Insert v; returns the normalised residue when v was independent.
    pub fn insert(&mut self, mut v: Vec<u64>) -> Option<Vec<u64>> {
        self.reduce(&mut v);
        let c = v.iter().position(|&x| x != 0)?;
        let s = inv(v[c]);
        for x in v.iter_mut() {
            *x = mul(*x, s);
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                if r != 0 {
                    *x = sub(*x, mul(f, r));
                }
            }
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(v.clone());
        self.pivots.push(c);
        Some(v)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Rows sorted by pivot column.
    pub fn rref(&self) -> Vec<Vec<u64>> {
        (0..self.n).filter_map(|c| self.pivot_row[c].map(|r| self.rows[r].clone())).collect()
    }

    /// Lift the RREF to Q by rational reconstruction.
    pub fn reconstruct(&self) -> Option<Vec<Vec<Rat>>> {
        self.rref()
            .into_iter()
            .map(|row| {
                row.into_iter().map(|x| if x == 0 { Some(Rat::zero()) } else { rational_reconstruct(x) }).collect()
            })
            .collect()
    }
}

pub fn vec_from_bigints(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(from_bigint).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::ratio;

    #[test]
    fn field_ops() {
        let a = 123456789012345u64;
        assert_eq!(mul(a, inv(a)), 1);
        assert_eq!(from_i64(-1), P - 1);
        assert_eq!(add(P - 1, 2), 1);
        assert_eq!(sub(1, 2), P - 1);
    }

    #[test]
    fn reconstructs_small_rationals() {
        for (n, d) in [(1, 3), (-7, 12), (0, 1), (123456, 7919), (-1, 1)] {
            let r = ratio(n, d);
            assert_eq!(rational_reconstruct(from_rat(&r).unwrap()), Some(r));
        }
    }

    #[test]
    fn echelon_rank() {
        let mut e = ModpEchelon::new(3);
        assert!(e.insert(vec![1, 2, 3]).is_some());
        assert!(e.insert(vec![2, 4, 6]).is_none());
        assert!(e.insert(vec![0, 1, 1]).is_some());
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&[1, 3, 4]));
        let q = e.reconstruct().unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q[0], vec![ratio(1, 1), ratio(0, 1), ratio(1, 1)]);
    }
}
