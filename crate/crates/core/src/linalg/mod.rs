//! Exact and modular linear algebra used by the monodromy computations.

pub mod echelon;
pub mod intmat;
pub mod modp;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use echelon::{make_primitive, primitive_integer, IntEchelon, RatSubspace};
pub use intmat::IntMatrix;

use crate::polycore::{Rat, RatPoly};

/// Determinant by Gaussian elimination over Q.
pub fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

pub fn det_int(m: &IntMatrix) -> BigInt {
    let rows = (0..m.nrows()).map(|i| m.row(i).iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect()).collect();
    det_rat(rows).to_integer()
}

/// Determinant modulo P.
pub fn det_modp(m: &IntMatrix) -> u64 {
    let n = m.nrows();
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| m.row(i).iter().map(|&v| modp::from_i64(v)).collect()).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = modp::sub(0, det);
        }
        det = modp::mul(det, a[c][c]);
        let inv = modp::inv(a[c][c]);
        for i in c + 1..n {
            if a[i][c] == 0 {
                continue;
            }
            let f = modp::mul(a[i][c], inv);
            for j in c..n {
                let t = modp::mul(f, a[c][j]);
                a[i][j] = modp::sub(a[i][j], t);
            }
        }
    }
    det
}

/// Characteristic polynomial det(tI - A) by the division-free
/// Samuelson-Berkowitz recursion.
pub fn charpoly(a: &IntMatrix) -> RatPoly {
    assert!(a.is_square());
    let n = a.nrows();
    // coefficients, highest degree first
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(BigInt::from(-a.get(r, r)));
        let mut w: Vec<BigInt> = (0..r).map(|i| BigInt::from(a.get(i, r))).collect();
        for k in 0..r {
            let rc: BigInt = (0..r).map(|j| &w[j] * a.get(r, j)).sum();
            t.push(-rc);
            if k + 1 < r {
                w = (0..r).map(|i| (0..r).filter(|&j| a.get(i, j) != 0).map(|j| &w[j] * a.get(i, j)).sum()).collect();
            }
        }
        let mut nv = vec![BigInt::zero(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                if i - j < t.len() && !t[i - j].is_zero() {
                    *slot += &t[i - j] * &v[j];
                }
            }
        }
        v = nv;
    }
    RatPoly::new(v.into_iter().rev().map(Rat::from_integer).collect())
}
