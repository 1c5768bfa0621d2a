#![allow(dead_code)]

use nalgebra::Complex;
use proptest::prelude::*;
use vancycle::polycore::{rat, Rat, RatPoly};

/// Critical values of a real Morse polynomial with `n` critical points:
/// strictly alternating up and down.
pub fn alternating(n: usize) -> impl Strategy<Value = Vec<i64>> {
    (any::<bool>(), -3i64..=3, prop::collection::vec(1i64..=4, n.saturating_sub(1))).prop_map(
        move |(up, start, steps)| {
            let mut v = vec![start];
            for (k, s) in steps.iter().enumerate() {
                let sign = if (k % 2 == 0) == up { 1 } else { -1 };
                v.push(v[k] + sign * s);
            }
            v
        },
    )
}

/// Values for one side of degree `deg`: alternating, or the single value of
/// a pure power.
pub fn side_values(deg: usize) -> BoxedStrategy<Vec<i64>> {
    let n = deg - 1;
    if n == 1 {
        return (-3i64..=3).prop_map(|v| vec![v]).boxed();
    }
    prop_oneof![4 => alternating(n), 1 => Just(vec![0; n])].boxed()
}

/// (h values, g values) for degrees 2..=max_e and 2..=max_d.
pub fn grid_values(max_e: usize, max_d: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (2..=max_e, 2..=max_d).prop_flat_map(|(e, d)| (side_values(e), side_values(d)))
}

/// Real polynomial of the given degree with distinct integer critical
/// points: the antiderivative of lead * deg * prod(x - r).
pub fn real_poly(deg: usize) -> impl Strategy<Value = RatPoly> {
    (prop::sample::subsequence((-4i64..=4).collect::<Vec<_>>(), deg - 1), prop_oneof![Just(1i64), Just(-1)], -3i64..=3)
        .prop_map(move |(roots, lead, c)| {
            let roots: Vec<Rat> = roots.into_iter().map(rat).collect();
            let deriv = RatPoly::from_roots(&roots).scale(&rat(lead * deg as i64));
            antiderivative(&deriv, rat(c))
        })
}

pub fn antiderivative(p: &RatPoly, c: Rat) -> RatPoly {
    let mut coeffs = vec![c];
    coeffs.extend(p.coeffs().iter().enumerate().map(|(k, a)| a / rat(k as i64 + 1)));
    RatPoly::new(coeffs)
}

/// x -> a x + b inside p.
pub fn affine(p: &RatPoly, a: i64, b: i64) -> RatPoly {
    p.compose(&RatPoly::from_i64s(&[b, a]))
}

/// Complex roots by Durand-Kerner iteration.
pub fn complex_roots(c: &[f64]) -> Vec<Complex<f64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let eval = |z: Complex<f64>| c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a / lead);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| Complex::new(0.4, 0.9).powu(k as u32)).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
        }
    }
    z
}

/// Critical values of f clustered at relative distance `tol`: cluster
/// sizes largest first, whether all values are real, the widest cluster and
/// the narrowest gap between clusters.
pub fn oracle_profile(f: &[f64], tol: f64) -> (Vec<usize>, bool, f64, f64) {
    let df: Vec<f64> = f.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    let vals: Vec<Complex<f64>> = complex_roots(&df)
        .into_iter()
        .map(|z| f.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * z + a))
        .collect();
    let mut cluster = vec![usize::MAX; vals.len()];
    let mut sizes = Vec::new();
    let (mut spread, mut gap) = (0.0f64, f64::INFINITY);
    for i in 0..vals.len() {
        if cluster[i] != usize::MAX {
            continue;
        }
        cluster[i] = sizes.len();
        sizes.push(1);
        for j in i + 1..vals.len() {
            let dist = (vals[i] - vals[j]).norm();
            if cluster[j] == usize::MAX && dist <= tol * vals[i].norm().max(1.0) {
                cluster[j] = cluster[i];
                *sizes.last_mut().unwrap() += 1;
                spread = spread.max(dist);
            }
        }
    }
    for i in 0..vals.len() {
        for j in 0..vals.len() {
            if cluster[i] != cluster[j] {
                gap = gap.min((vals[i] - vals[j]).norm());
            }
        }
    }
    let real = vals.iter().all(|v| v.im.abs() <= tol * v.norm().max(1.0));
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    (sizes, real, spread, gap)
}
