use serde::Serialize;

use super::poly::RatPoly;
use super::resultant::discriminant_curve;
use super::roots::{eval_interval, isolate_real_roots, IsolatedRoot};
use crate::error::{Error, Result};

/// Critical points and critical values of a real polynomial, all exact.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalProfile {
    pub poly: RatPoly,
    /// Distinct critical points, left to right.
    pub crit_points: Vec<IsolatedRoot>,
    /// Multiplicity of each critical point as a root of the derivative.
    pub point_multiplicity: Vec<usize>,
    /// Distinct critical values, increasing.
    pub crit_values: Vec<IsolatedRoot>,
    /// Multiplicity of each critical value in the discriminant curve.
    pub value_multiplicity: Vec<usize>,
    /// Index into `crit_values` for each critical point.
    pub value_of_point: Vec<usize>,
}

impl CriticalProfile {
    /// The degrees d_i of the critical values, largest first.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = self.value_multiplicity.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Real critical points counted with multiplicity.
    pub fn real_point_count(&self) -> usize {
        self.point_multiplicity.iter().sum()
    }

    pub fn is_morse(&self) -> bool {
        self.point_multiplicity.iter().all(|&m| m == 1)
    }

    pub fn approx_values(&self) -> Vec<f64> {
        self.crit_values.iter().map(|v| v.approx()).collect()
    }

    pub fn approx_points(&self) -> Vec<f64> {
        self.crit_points.iter().map(|v| v.approx()).collect()
    }

    /// Critical values in x-order of the critical points.
    pub fn point_values(&self) -> Vec<&IsolatedRoot> {
        self.value_of_point.iter().map(|&k| &self.crit_values[k]).collect()
    }
}

/// Roots of `p` with multiplicity, sorted increasing.
fn roots_with_multiplicity(p: &RatPoly) -> Result<Vec<(IsolatedRoot, usize)>> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        for r in isolate_real_roots(&factor)? {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp_value(&b.0));
    Ok(out)
}

/// Critical values of f and their degrees. Fails when f has a non-real
/// critical value. Non-real critical points with real values are counted
/// in the degrees but absent from `crit_points`.
pub fn critical_values_degree(f: &RatPoly) -> Result<CriticalProfile> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: n });
    }
    let values = roots_with_multiplicity(&discriminant_curve(f)?)?;
    let real: usize = values.iter().map(|v| v.1).sum();
    if real != n - 1 {
        return Err(Error::NonRealCriticalValues(n - 1 - real));
    }
    let points = roots_with_multiplicity(&f.derivative())?;
    let crit_values: Vec<IsolatedRoot> = values.iter().map(|v| v.0.clone()).collect();
    let value_of_point = points.iter().map(|(p, _)| locate_value(f, p, &crit_values)).collect();
    Ok(CriticalProfile {
        poly: f.clone(),
        crit_points: points.iter().map(|p| p.0.clone()).collect(),
        point_multiplicity: points.iter().map(|p| p.1).collect(),
        value_multiplicity: values.iter().map(|v| v.1).collect(),
        crit_values,
        value_of_point,
    })
}

/// Index of the candidate equal to f(point). One of the candidates must be
/// exactly f(point); refine until the enclosure of f over the point's
/// interval meets a single candidate interval.
pub(crate) fn locate_value(f: &RatPoly, point: &IsolatedRoot, candidates: &[IsolatedRoot]) -> usize {
    let mut pt = point.clone();
    let mut cands = candidates.to_vec();
    loop {
        let (lo, hi) = eval_interval(f, pt.lo(), pt.hi());
        let hits: Vec<usize> = (0..cands.len()).filter(|&m| cands[m].lo() <= &hi && &lo <= cands[m].hi()).collect();
        match hits.len() {
            0 => unreachable!("value enclosure lost the true value"),
            1 => return hits[0],
            _ => {
                pt.bisect();
                for m in hits {
                    cands[m].bisect();
                }
            }
        }
    }
}

/// Index of the candidate whose value equals a + b, for real algebraic
/// a and b.
pub(crate) fn locate_sum(a: &IsolatedRoot, b: &IsolatedRoot, candidates: &[IsolatedRoot]) -> usize {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut cands = candidates.to_vec();
    loop {
        let lo = a.lo() + b.lo();
        let hi = a.hi() + b.hi();
        let hits: Vec<usize> = (0..cands.len()).filter(|&m| cands[m].lo() <= &hi && &lo <= cands[m].hi()).collect();
        match hits.len() {
            0 => unreachable!("sum enclosure lost the true value"),
            1 => return hits[0],
            _ => {
                a.bisect();
                b.bisect();
                for m in hits {
                    cands[m].bisect();
                }
            }
        }
    }
}
