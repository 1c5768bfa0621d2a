mod common;

use num_traits::ToPrimitive;
use proptest::prelude::*;

use vancycle::classify::{classify_all, quartic_orbit_class, Explanation};
use vancycle::dynkin::{detect_symmetry, diagram_for, Side};
use vancycle::joincycles::Fibration;
use vancycle::monodromy::Orbits;
use vancycle::polycore::{
    critical_values_degree, depress_quartic, discriminant_curve, rat, resultant, sylvester_resultant, Rat, RatPoly,
};
use vancycle::Error;

fn small_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1).prop_map(|c| RatPoly::from_i64s(&c))
}

fn nonzero(a: i64) -> i64 {
    if a == 0 {
        1
    } else {
        a
    }
}

/// Quartics with real critical points, including the decomposable ones.
fn real_quartic() -> BoxedStrategy<RatPoly> {
    let even = (1i64..=4, -3i64..=3, prop_oneof![Just(1i64), Just(-1)]).prop_map(|(c, s, lead)| {
        // lead * ((x - s)^4 - 2c (x - s)^2)
        let p = RatPoly::from_i64s(&[0, 0, -2 * c, 0, 1]).scale(&rat(lead));
        common::affine(&p, 1, -s)
    });
    prop_oneof![common::real_poly(4), even].boxed()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn resultant_is_multiplicative(p in small_poly(3), q in small_poly(3), r in small_poly(3)) {
        prop_assume!(!p.is_zero() && !q.is_zero() && !r.is_zero());
        let pq = &p * &q;
        prop_assert_eq!(resultant(&pq, &r), resultant(&p, &r) * resultant(&q, &r));
    }

    #[test]
    fn resultant_routes_agree(p in small_poly(4), q in small_poly(4)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assert_eq!(resultant(&p, &q), sylvester_resultant(&p, &q));
    }

    #[test]
    fn degrees_sum_to_degree_minus_one(f in prop_oneof![common::real_poly(3), common::real_poly(4), common::real_poly(5)]) {
        let prof = critical_values_degree(&f).unwrap();
        prop_assert_eq!(prof.degrees().iter().sum::<usize>(), f.degree().unwrap() - 1);
        prop_assert!(prof.is_morse());
    }

    #[test]
    fn decomposable_iff_middle_symmetry(g in real_quartic()) {
        let (diag, _) = diagram_for(&g, Side::G).unwrap();
        let sym = detect_symmetry(&diag, 2).unwrap();
        let r1_zero = depress_quartic(&g).unwrap().r1 == Rat::from_integer(0.into());
        prop_assert_eq!(sym.horizontal.iter().any(|h| h.r == 2), r1_zero);
    }

    #[test]
    fn classes_agree_and_are_symmetric(h in real_quartic(), g in real_quartic()) {
        // a disagreement between the two routes is an error
        let a = quartic_orbit_class(&h, &g).unwrap();
        let b = quartic_orbit_class(&g, &h).unwrap();
        prop_assert_eq!(a.tag, b.tag);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn verdicts_are_affine_invariant(
        h in prop_oneof![common::real_poly(3), common::real_poly(4)],
        g in prop_oneof![common::real_poly(3), common::real_poly(4), common::real_poly(5)],
        (a, b, c, e) in (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2),
    ) {
        let key = |h: &RatPoly, g: &RatPoly| -> Vec<(bool, usize, Explanation)> {
            let f = Fibration::from_polys(h, g).unwrap();
            classify_all(&f).unwrap().into_iter().map(|v| (v.simple, v.span.dim, v.explanation)).collect()
        };
        let moved = key(&common::affine(&h, nonzero(c), e), &common::affine(&g, nonzero(a), b));
        prop_assert_eq!(key(&h, &g), moved);
    }
}

/// Every alternating sequence of n values in 0..n; this covers every order
/// type of critical values.
fn alternating_patterns(n: usize) -> Vec<Vec<i64>> {
    let all = (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|v: Vec<i64>| (0..n as i64).map(move |x| [v.clone(), vec![x]].concat())).collect()
    });
    all.into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] != w[1]) && v.windows(3).all(|w| (w[1] > w[0]) != (w[2] > w[1])))
        .collect()
}

#[test]
fn e2_non_simple_iff_symmetric_column() {
    let mut seen = 0;
    for d in [4usize, 5] {
        for gv in alternating_patterns(d - 1) {
            let f = Fibration::from_critical_values(&[0], &gv).unwrap();
            let sym = detect_symmetry(&f.basis.g, 2).unwrap();
            let orbits = Orbits::for_fibration(&f).unwrap();
            for col in 0..f.basis.cols() {
                let simple = orbits.of_cycle(f.basis.index(0, col)).unwrap().is_full();
                assert_eq!(!simple, sym.column_is_symmetric(col + 1), "values {gv:?}, column {}", col + 1);
            }
            seen += 1;
        }
    }
    assert!(seen > 20, "{seen} patterns");
}

#[test]
fn discriminant_curve_vanishes_exactly_at_critical_values() {
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            let f = [0.0, b as f64, a as f64, 0.0, 1.0];
            let lam = discriminant_curve(&RatPoly::from_i64s(&[0, b, a, 0, 1])).unwrap();
            let lc: Vec<f64> = lam.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
            roots_match(&f, &lc, a, b);
        }
    }
}

/// The roots of the discriminant curve are the values at the complex
/// critical points, with multiplicity.
fn roots_match(f: &[f64], lam: &[f64], a: i64, b: i64) {
    let df: Vec<f64> = f.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    let vals: Vec<_> = common::complex_roots(&df)
        .into_iter()
        .map(|z| f.iter().rev().fold(nalgebra::Complex::new(0.0, 0.0), |acc, &c| acc * z + c))
        .collect();
    let mut roots = common::complex_roots(lam);
    assert_eq!(vals.len(), roots.len());
    for v in &vals {
        let (k, dist) =
            roots
                .iter()
                .map(|r| (r - v).norm())
                .enumerate()
                .fold((0, f64::INFINITY), |m, x| if x.1 < m.1 { x } else { m });
        // repeated roots converge slowly, hence the loose tolerance
        assert!(dist < 1e-4 * v.norm().max(1.0), "a = {a}, b = {b}: {v} has no match in {roots:?}");
        roots.remove(k);
    }
}

#[test]
fn non_real_values_rejected() {
    let err = critical_values_degree(&RatPoly::from_i64s(&[0, 1, 0, 0, 1])).unwrap_err();
    assert_eq!(err, Error::NonRealCriticalValues(2));
}
