use num_traits::{One, Zero};

use super::poly::{rat, Rat, RatPoly};
use crate::error::{Error, Result};

/// Res(a, b) by the Euclidean remainder sequence over Q.
pub fn resultant(a: &RatPoly, b: &RatPoly) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Rat::one();
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return acc * num_traits::pow(b.lead().unwrap().clone(), m);
        }
        if m == 0 {
            return acc * num_traits::pow(a.lead().unwrap().clone(), n);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Rat::zero();
        }
        let k = r.degree().unwrap();
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.lead().unwrap().clone(), m - k);
        a = b;
        b = r;
    }
}

/// Res(a, b) as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(a: &RatPoly, b: &RatPoly) -> Rat {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return Rat::zero();
    };
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut s = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    crate::linalg::det_rat(s)
}

/// Discriminant of p: (-1)^(n(n-1)/2) Res(p, p') / lc(p).
pub fn discriminant(p: &RatPoly) -> Result<Rat> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 1 {
        return Err(Error::DegreeTooSmall { min: 1, got: n });
    }
    let r = resultant(p, &p.derivative()) / p.lead().unwrap();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// The monic polynomial in the value variable whose roots are the critical
/// values of f, repeated by the multiplicity of the critical points:
/// Res_x(f(x) - t, f'(x)) normalised to be monic, degree deg f - 1.
pub fn discriminant_curve(f: &RatPoly) -> Result<RatPoly> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: n });
    }
    let df = f.derivative();
    let xs: Vec<Rat> = (0..n as i64).map(rat).collect();
    let ys: Vec<Rat> = xs.iter().map(|t| resultant(&(f - &RatPoly::constant(t.clone())), &df)).collect();
    let lam = interpolate(&xs, &ys);
    debug_assert_eq!(lam.degree(), Some(n - 1));
    Ok(lam.monic())
}

/// Newton interpolation through (xs[i], ys[i]) with distinct xs.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> RatPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &RatPoly::new(vec![-xs[i].clone(), Rat::one()])) + &RatPoly::constant(dd[i].clone());
    }
    acc
}
