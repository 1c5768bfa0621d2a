//! Picard-Lefschetz operators on the join basis and the subspaces spanned by
//! orbits of a vanishing cycle.

use std::collections::VecDeque;
use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::joincycles::{monomial_intersection_matrix, Fibration, JoinBasis};
use crate::linalg::{charpoly, det_int, det_modp, modp, primitive_integer, IntEchelon, IntMatrix, RatSubspace};
use crate::polycore::Rat;

/// Monodromy around one critical value of f: the matrix of the operator on
/// the join basis (columns are images of basis vectors) and the cycles
/// vanishing at that value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonOp {
    pub matrix: IntMatrix,
    pub group: Vec<usize>,
}

impl MonOp {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Sparse rows of the operator minus the identity.
    fn generators(&self) -> Vec<Vec<(usize, i64)>> {
        self.matrix.sub(&IntMatrix::identity(self.dim())).sparse_rows()
    }
}

/// T = I - P S, with S the intersection matrix and P the projection onto the
/// cycles of `group`:
/// T v = v - sum over k in group of <v, c_k> c_k.
pub fn local_operator(form: &IntMatrix, group: &[usize]) -> Result<MonOp> {
    if group.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let n = form.nrows();
    let mut g = group.to_vec();
    g.sort_unstable();
    g.dedup();
    if let Some(&bad) = g.iter().find(|&&k| k >= n) {
        return Err(Error::OutOfRange { index: bad + 1, max: n });
    }
    let mut t = IntMatrix::identity(n);
    for &k in &g {
        for a in 0..n {
            t.set(k, a, t.get(k, a) - form.get(k, a));
        }
    }
    Ok(MonOp { matrix: t, group: g })
}

/// Exponents for which the pure-power operator has been checked against
/// published matrices.
pub fn is_validated_exponent(e: usize) -> bool {
    (2..=4).contains(&e)
}

/// I - S for y^e + x^d, the monodromy around the single critical value.
pub fn total_monomial_monodromy(e: usize, d: usize) -> Result<MonOp> {
    if e < 2 {
        return Err(Error::UnsupportedExponent(e));
    }
    let form = monomial_intersection_matrix(e, d)?;
    let n = form.nrows();
    Ok(MonOp { matrix: IntMatrix::identity(n).sub(&form), group: (0..n).collect() })
}

/// One local operator per critical value of the fibration.
pub fn fibration_operators(f: &Fibration) -> Vec<MonOp> {
    f.grid.classes.iter().map(|c| local_operator(&f.form, c).expect("classes are non-empty")).collect()
}

/// Whether the cycles of a group are pairwise orthogonal.
pub fn is_isotropic(form: &IntMatrix, group: &[usize]) -> bool {
    group.iter().all(|&a| group.iter().all(|&b| form.get(a, b) == 0))
}

/// T^t S T.
pub fn transformed_form(t: &MonOp, form: &IntMatrix) -> IntMatrix {
    t.matrix.transpose().mul(form).unwrap().mul(&t.matrix).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpanRoute {
    /// Full rank reached modulo a prime.
    Modular,
    /// Reduced echelon form lifted from a prime and checked over Q.
    Lifted,
    /// Fraction-free closure over the integers.
    Exact,
}

/// Smallest subspace containing v and stable under the operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpan {
    pub subspace: RatSubspace,
    /// Flat indices of the basis cycles lying in the subspace.
    pub basis_cycles: Vec<usize>,
    pub route: SpanRoute,
    /// Operator applications performed while closing.
    pub steps: usize,
}

impl OrbitSpan {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn is_full(&self) -> bool {
        self.subspace.dim() == self.subspace.ambient()
    }

    pub fn report(&self, basis: &JoinBasis) -> OrbitReport {
        OrbitReport {
            dim: self.dim(),
            basis: self.subspace.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            basis_cycles: self
                .basis_cycles
                .iter()
                .map(|&k| {
                    let (r, c) = basis.cell(k);
                    [r + 1, c + 1]
                })
                .collect(),
            positions: self.basis_cycles.iter().map(|k| k + 1).collect(),
        }
    }
}

/// JSON form of an orbit span. Cells are 1-based (row, col); positions are
/// 1-based flat indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub basis_cycles: Vec<[usize; 2]>,
    pub positions: Vec<usize>,
}

fn apply_modp(gens: &[Vec<(usize, i64)>], v: &[u64]) -> Vec<u64> {
    gens.iter()
        .map(|row| {
            row.iter().fold(
                0u64,
                |acc, &(j, a)| {
                    if v[j] == 0 {
                        acc
                    } else {
                        modp::add(acc, modp::mul(modp::from_i64(a), v[j]))
                    }
                },
            )
        })
        .collect()
}

fn apply_int(gens: &[Vec<(usize, i64)>], v: &[BigInt]) -> Vec<BigInt> {
    gens.iter().map(|row| row.iter().filter(|(j, _)| !v[*j].is_zero()).map(|&(j, a)| &v[j] * a).sum()).collect()
}

fn apply_rat(gens: &[Vec<(usize, i64)>], v: &[Rat]) -> Vec<Rat> {
    gens.iter()
        .map(|row| {
            row.iter().filter(|(j, _)| !v[*j].is_zero()).map(|&(j, a)| &v[j] * Rat::from_integer(BigInt::from(a))).sum()
        })
        .collect()
}

/// Orbit spans under a fixed set of operators. The operators are checked
/// to be invertible once, and their sparse ops are prepared once.
#[derive(Clone, Debug)]
pub struct Orbits {
    n: usize,
    ops: Vec<Vec<Vec<(usize, i64)>>>,
}

impl Orbits {
    pub fn new(n: usize, generators: &[MonOp]) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.dim() });
            }
            if det_modp(&g.matrix) == 0 && det_int(&g.matrix).is_zero() {
                return Err(Error::SingularOperator(i + 1));
            }
        }
        Ok(Orbits { n, ops: generators.iter().map(|g| g.generators()).collect() })
    }

    /// Engine for the local operators of a fibration.
    pub fn for_fibration(f: &Fibration) -> Result<Self> {
        Self::new(f.size(), &fibration_operators(f))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Span of the orbit of v under the group generated by the operators.
    ///
    /// The operators are invertible over Q, so the span closed under the
    /// operators alone is already closed under their inverses.
    pub fn span(&self, v: &[Rat]) -> Result<OrbitSpan> {
        let n = self.n;
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let w = primitive_integer(v).ok_or(Error::ZeroVector)?;

        // closure modulo P: its dimension is a lower bound for the rational one
        let mut ech = modp::ModpEchelon::new(n);
        let mut queue = VecDeque::new();
        queue.push_back(ech.insert(modp::vec_from_bigints(&w)).expect("nonzero"));
        let mut steps = 0;
        while let Some(u) = queue.pop_front() {
            if ech.is_full() {
                break;
            }
            for d in &self.ops {
                steps += 1;
                if let Some(r) = ech.insert(apply_modp(d, &u)) {
                    queue.push_back(r);
                }
            }
        }
        if ech.is_full() {
            return Ok(finish(RatSubspace::full(n), SpanRoute::Modular, steps));
        }
        if let Some(s) = ech.reconstruct().and_then(|rows| RatSubspace::from_rref(n, rows)) {
            if s.dim() == ech.dim() && is_stable(&s, &self.ops, &w) {
                return Ok(finish(s, SpanRoute::Lifted, steps));
            }
        }
        let s = exact_closure(&self.ops, w, &mut steps);
        Ok(finish(s, SpanRoute::Exact, steps))
    }

    /// Orbit span of the unit vector at flat index k.
    pub fn of_cycle(&self, k: usize) -> Result<OrbitSpan> {
        if k >= self.n {
            return Err(Error::OutOfRange { index: k + 1, max: self.n });
        }
        let mut v = vec![Rat::zero(); self.n];
        v[k] = Rat::from_integer(1.into());
        self.span(&v)
    }
}

/// One-shot orbit span; see [`Orbits::span`].
pub fn orbit_span(generators: &[MonOp], v: &[Rat]) -> Result<OrbitSpan> {
    Orbits::new(v.len(), generators)?.span(v)
}

fn finish(subspace: RatSubspace, route: SpanRoute, steps: usize) -> OrbitSpan {
    OrbitSpan { basis_cycles: subspace.unit_vectors(), subspace, route, steps }
}

/// Whether s contains w and is mapped into itself by every operator.
fn is_stable(s: &RatSubspace, ops: &[Vec<Vec<(usize, i64)>>], w: &[BigInt]) -> bool {
    s.contains_int(w) && s.rows().iter().all(|r| ops.iter().all(|d| s.contains(&apply_rat(d, r))))
}

fn exact_closure(ops: &[Vec<Vec<(usize, i64)>>], w: Vec<BigInt>, steps: &mut usize) -> RatSubspace {
    let n = w.len();
    let mut ech = IntEchelon::new(n);
    let mut queue = VecDeque::new();
    queue.push_back(ech.insert(w).expect("nonzero"));
    while let Some(u) = queue.pop_front() {
        if ech.dim() == n {
            break;
        }
        for d in ops {
            *steps += 1;
            if let Some(r) = ech.insert(apply_int(d, &u)) {
                queue.push_back(r);
            }
        }
    }
    let rows: Vec<Vec<Rat>> =
        ech.rows().iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
    RatSubspace::span(n, &rows)
}

/// Orbit span of the unit vector at flat index k.
pub fn orbit_of_cycle(generators: &[MonOp], n: usize, k: usize) -> Result<OrbitSpan> {
    Orbits::new(n, generators)?.of_cycle(k)
}

/// Flat indices of basis cycles contained in the span.
pub fn basis_cycles_in_span(span: &OrbitSpan) -> Vec<usize> {
    span.subspace.unit_vectors()
}

/// Number of distinct complex eigenvalues: the degree of the squarefree
/// part of the characteristic polynomial.
pub fn distinct_eigenvalue_count(m: &IntMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
    }
    if m.nrows() == 0 {
        return Ok(0);
    }
    Ok(charpoly(m).squarefree_part().degree().unwrap())
}

/// Outcome of checking the spectrum of the e = 2 pure-power monodromy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E2Check {
    pub d: usize,
    /// Largest distance between a computed eigenvalue and its closed form.
    pub max_error: f64,
    /// D M D is the transpose of the tridiagonal T with 1 on the diagonal,
    /// -1 below and +1 above, for D = diag(-1, 1, 1, -1, -1, 1, 1, ...).
    pub similar_to_tridiagonal: bool,
    /// Largest residual of the closed-form eigenvectors of T.
    pub eigvec_residual: f64,
    pub pass: bool,
}

pub fn e2_eigenvalue_check(d: usize, tol: f64) -> Result<E2Check> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: d });
    }
    let m = total_monomial_monodromy(2, d)?.matrix;
    let n = d - 1;
    // S = I - M is real antisymmetric, so i S is Hermitian with real
    // eigenvalues l and the eigenvalues of M are 1 + i l. The Hermitian
    // solver always converges; the general real Schur iteration can stall
    // on these matrices.
    let herm = DMatrix::from_fn(n, n, |i, j| Complex::new(0.0, (i == j) as i64 as f64 - m.get(i, j) as f64));
    let computed: Vec<(f64, f64)> = SymmetricEigen::new(herm).eigenvalues.iter().map(|&l| (1.0, l)).collect();
    let expected: Vec<(f64, f64)> = (1..d).map(|j| (1.0, 2.0 * (j as f64 * PI / d as f64).cos())).collect();
    let mut used = vec![false; n];
    let mut max_error: f64 = 0.0;
    for &(re, im) in &expected {
        let (best, dist) = (0..n)
            .filter(|&k| !used[k])
            .map(|k| (k, ((computed[k].0 - re).powi(2) + (computed[k].1 - im).powi(2)).sqrt()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        used[best] = true;
        max_error = max_error.max(dist);
    }

    let sign = |k: usize| if matches!(k % 4, 0 | 3) { -1 } else { 1 };
    let similar_to_tridiagonal = (0..n).all(|i| {
        (0..n).all(|j| {
            let want = match j as isize - i as isize {
                0 => 1,
                -1 => 1,
                1 => -1,
                _ => 0,
            };
            sign(i) * m.get(i, j) * sign(j) == want
        })
    });

    let mut eigvec_residual: f64 = 0.0;
    for j in 1..d {
        let lam = (1.0, 2.0 * (j as f64 * PI / d as f64).cos());
        // u_k = i^(k-1) sqrt(2/d) sin(k j pi / d), k = 1..n
        let u: Vec<(f64, f64)> = (1..=n)
            .map(|k| {
                let a = (2.0 / d as f64).sqrt() * ((k * j) as f64 * PI / d as f64).sin();
                match (k - 1) % 4 {
                    0 => (a, 0.0),
                    1 => (0.0, a),
                    2 => (-a, 0.0),
                    _ => (0.0, -a),
                }
            })
            .collect();
        for i in 0..n {
            let mut acc = (0.0, 0.0);
            for k in i.saturating_sub(1)..(i + 2).min(n) {
                // entries of the tridiagonal T = (D M D)^t
                let t = (sign(k) * m.get(k, i) * sign(i)) as f64;
                acc.0 += t * u[k].0;
                acc.1 += t * u[k].1;
            }
            let lu = (lam.0 * u[i].0 - lam.1 * u[i].1, lam.0 * u[i].1 + lam.1 * u[i].0);
            eigvec_residual = eigvec_residual.max(((acc.0 - lu.0).powi(2) + (acc.1 - lu.1).powi(2)).sqrt());
        }
    }
    Ok(E2Check {
        d,
        max_error,
        similar_to_tridiagonal,
        eigvec_residual,
        pass: max_error <= tol && similar_to_tridiagonal && eigvec_residual <= tol,
    })
}

/// Float summary of a rational span basis, handy for display.
pub fn approx_rows(span: &OrbitSpan) -> Vec<Vec<f64>> {
    span.subspace.rows().iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rat;

    #[test]
    fn single_group_operator_is_i_minus_form() {
        for (e, d) in [(2, 5), (3, 4), (4, 6)] {
            let form = monomial_intersection_matrix(e, d).unwrap();
            let all: Vec<usize> = (0..form.nrows()).collect();
            let t = local_operator(&form, &all).unwrap();
            assert_eq!(t.matrix, IntMatrix::identity(form.nrows()).sub(&form));
            assert_eq!(t, total_monomial_monodromy(e, d).unwrap());
        }
    }

    #[test]
    fn singleton_group_fixes_its_cycle() {
        let form = monomial_intersection_matrix(3, 5).unwrap();
        let t = local_operator(&form, &[4]).unwrap();
        for i in 0..form.nrows() {
            assert_eq!(t.matrix.get(i, 4), if i == 4 { 1 } else { 0 });
        }
        assert!(local_operator(&form, &[]).is_err());
        assert!(local_operator(&form, &[99]).is_err());
    }

    #[test]
    fn isotropic_groups_preserve_the_form() {
        let form = monomial_intersection_matrix(3, 5).unwrap();
        // positions with no mutual intersections
        let g: Vec<usize> = vec![0, 5];
        assert!(is_isotropic(&form, &g));
        let t = local_operator(&form, &g).unwrap();
        assert_eq!(transformed_form(&t, &form), form);
        assert_eq!(det_int(&t.matrix), BigInt::from(1));
    }

    #[test]
    fn non_isotropic_defect_identity() {
        let form = monomial_intersection_matrix(2, 4).unwrap();
        let all: Vec<usize> = (0..3).collect();
        let t = local_operator(&form, &all).unwrap();
        // T^t S T = S - S P S P S with P = I here
        let p3 = form.mul(&form).unwrap().mul(&form).unwrap();
        assert_eq!(transformed_form(&t, &form), form.sub(&p3));
        assert_eq!(det_int(&t.matrix), BigInt::from(3));
        assert_ne!(det_modp(&t.matrix), 0);
    }

    #[test]
    fn orbit_errors() {
        let t = total_monomial_monodromy(2, 4).unwrap();
        assert_eq!(orbit_span(std::slice::from_ref(&t), &[rat(0), rat(0), rat(0)]).unwrap_err(), Error::ZeroVector);
        assert!(matches!(orbit_span(&[t], &[rat(1)]), Err(Error::DimensionMismatch { .. })));
        let singular = MonOp { matrix: IntMatrix::zeros(2, 2), group: vec![0] };
        assert_eq!(Orbits::new(2, &[singular]).unwrap_err(), Error::SingularOperator(1));
        // no operators: the span is the line through v
        let s = orbit_span(&[], &[rat(2), rat(-4)]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.subspace.contains(&[rat(1), rat(-2)]));
    }

    #[test]
    fn orbit_examples() {
        // e = 4, d = 6: position 5 reaches the cycles at 5 and 11 only
        let t = total_monomial_monodromy(4, 6).unwrap();
        let s = orbit_of_cycle(std::slice::from_ref(&t), 15, 4).unwrap();
        let mut pos: Vec<usize> = s.basis_cycles.iter().map(|k| k + 1).collect();
        pos.sort();
        assert_eq!(pos, vec![5, 11]);
        // coprime column: everything
        let s = orbit_of_cycle(&[t], 15, 0).unwrap();
        assert!(s.is_full());
        assert_eq!(s.route, SpanRoute::Modular);
    }

    #[test]
    fn routes_agree() {
        let t = total_monomial_monodromy(3, 6).unwrap();
        for k in 0..10 {
            let s = orbit_of_cycle(std::slice::from_ref(&t), 10, k).unwrap();
            let mut steps = 0;
            let mut w = vec![BigInt::zero(); 10];
            w[k] = BigInt::from(1);
            let exact = exact_closure(&[t.generators()], w, &mut steps);
            assert_eq!(s.subspace, exact, "k = {k}");
        }
    }

    #[test]
    fn eigen_counts() {
        // e = 2: d - 1 distinct eigenvalues
        for d in 2..12 {
            let m = total_monomial_monodromy(2, d).unwrap().matrix;
            assert_eq!(distinct_eigenvalue_count(&m).unwrap(), d - 1);
        }
        assert_eq!(distinct_eigenvalue_count(&IntMatrix::identity(4)).unwrap(), 1);
    }

    #[test]
    fn e2_spectrum() {
        for d in [2, 3, 7, 20] {
            let c = e2_eigenvalue_check(d, 1e-9).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }
}
