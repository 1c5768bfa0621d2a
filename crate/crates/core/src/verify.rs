//! Reproduction suites: each runs a family of exact checks against the
//! published matrices, tables and classes and reports pass/fail per item.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{pure_power_table, quartic_orbit_class, quartic_rank_profile, verify_tables, OrbitTag};
use crate::joincycles::{monomial_intersection_matrix, AbstractGrid, Fibration};
use crate::monodromy::{distinct_eigenvalue_count, e2_eigenvalue_check, local_operator, total_monomial_monodromy};
use crate::polycore::RatPoly;

/// Top-left blocks of the intersection matrices of y^e + x^d.
pub mod golden {
    pub const E2_BLOCK: [[i64; 4]; 4] = [[0, -1, 0, 0], [1, 0, 1, 0], [0, -1, 0, -1], [0, 0, 1, 0]];

    pub const E3_BLOCK: [[i64; 8]; 8] = [
        [0, -1, -1, 1, 0, 0, 0, 0],
        [1, 0, 0, -1, 0, 0, 0, 0],
        [1, 0, 0, -1, 1, 0, 0, 0],
        [-1, 1, 1, 0, -1, 1, 0, 0],
        [0, 0, -1, 1, 0, -1, -1, 1],
        [0, 0, 0, -1, 1, 0, 0, -1],
        [0, 0, 0, 0, 1, 0, 0, -1],
        [0, 0, 0, 0, -1, 1, 1, 0],
    ];

    pub const E4_BLOCK: [[i64; 12]; 12] = [
        [0, -1, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0],
        [1, 0, 1, 0, -1, 0, 0, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0],
        [-1, 1, -1, 1, 0, 1, -1, 1, -1, 0, 0, 0],
        [0, 0, 1, 0, -1, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, -1, 0, -1, 1, 0],
        [0, 0, 0, 0, -1, 0, 1, 0, 1, 0, -1, 0],
        [0, 0, 0, 0, 1, -1, 0, -1, 0, 0, 1, -1],
        [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, -1, 1, -1, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0],
    ];

    /// Periodic patterns of the first superdiagonals; diagonals past the
    /// listed ones vanish.
    pub const E2_DIAGONALS: &[&[i64]] = &[&[-1, 1]];
    pub const E3_DIAGONALS: &[&[i64]] = &[&[-1, 0, -1, -1], &[-1, -1, 1, 1], &[1, 0, 0, 0]];
    /// The last pattern (-1, 0, 0, 0, 1, 0) sits below the diagonal, so it
    /// is checked on the subdiagonal.
    pub const E4_DIAGONALS: &[&[i64]] =
        &[&[-1, 1, 0], &[0, 0, 1, 0, -1, 0], &[-1, -1, -1, 1, 1, 1], &[-1, 0, 0, 0, 1, 0]];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub key: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(key: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { key: key.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteResult {
    fn new(suite: &str, checks: Vec<Check>, started: Instant) -> Self {
        SuiteResult {
            suite: suite.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
            elapsed_ms: Some(started.elapsed().as_millis() as u64),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn without_timings(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }
}

/// Degree caps and worker count for the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Cap for e = 3, 4 (and for the golden diagonal checks).
    pub max_d: usize,
    /// Cap for e = 2 in the pure-power tables.
    pub max_d_e2: usize,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_d: 30, max_d_e2: 100, jobs: 1 }
    }
}

/// Run `f` over `tasks` on up to `jobs` threads; results keep task order.
pub fn run_parallel<T: Sync, R: Send>(tasks: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, tasks.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let r = f(&tasks[i]);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.expect("every task ran")).collect()
}

fn corner_matches<const N: usize>(e: usize, d: usize, want: &[[i64; N]; N]) -> Check {
    let key = format!("form{e}-block-d{d}");
    match monomial_intersection_matrix(e, d) {
        Ok(m) => {
            let bad: Vec<String> = (0..N)
                .flat_map(|i| (0..N).map(move |j| (i, j)))
                .filter(|&(i, j)| m.get(i, j) != want[i][j])
                .map(|(i, j)| format!("({},{}) = {} want {}", i + 1, j + 1, m.get(i, j), want[i][j]))
                .collect();
            Check::new(key, bad.is_empty(), bad.join("; "))
        }
        Err(err) => Check::new(key, false, err.to_string()),
    }
}

fn periodic(e: usize, d: usize, patterns: &[&[i64]]) -> Check {
    let key = format!("form{e}-diagonals-d{d}");
    let m = match monomial_intersection_matrix(e, d) {
        Ok(m) => m,
        Err(err) => return Check::new(key, false, err.to_string()),
    };
    let n = m.nrows() as isize;
    let mut bad = Vec::new();
    for k in 1..n {
        let pat = patterns.get(k as usize - 1);
        // the fourth e = 4 pattern lives below the diagonal
        let diag = if e == 4 && k == 4 { m.diagonal(-k) } else { m.diagonal(k) };
        let ok = match pat {
            Some(p) => diag.iter().enumerate().all(|(i, &v)| v == p[i % p.len()]),
            None => diag.iter().all(|&v| v == 0),
        };
        if !ok {
            bad.push(format!("diagonal {k}"));
        }
    }
    Check::new(key, bad.is_empty(), bad.join(", "))
}

/// Printed blocks and periodic diagonals for d up to `max_d`.
pub fn golden_block_checks(max_d: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for d in 5..=max_d.max(5) {
        checks.push(corner_matches(2, d, &golden::E2_BLOCK));
        checks.push(corner_matches(3, d, &golden::E3_BLOCK));
        checks.push(corner_matches(4, d, &golden::E4_BLOCK));
    }
    for d in 2..=max_d.max(2) {
        checks.push(periodic(2, d, golden::E2_DIAGONALS));
        checks.push(periodic(3, d, golden::E3_DIAGONALS));
        checks.push(periodic(4, d, golden::E4_DIAGONALS));
    }
    checks
}

/// Antisymmetry and single-group operator = I - S, e = 2, 3, 4.
pub fn identity_checks(max_d: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for e in 2..=4 {
        for d in 2..=max_d.max(2) {
            let key = format!("identity-e{e}-d{d}");
            let r = (|| -> crate::Result<bool> {
                let form = monomial_intersection_matrix(e, d)?;
                let all: Vec<usize> = (0..form.nrows()).collect();
                let single = local_operator(&form, &all)?;
                Ok(form.is_antisymmetric() && single == total_monomial_monodromy(e, d)?)
            })();
            checks.push(match r {
                Ok(ok) => Check::new(key, ok, if ok { "" } else { "single-group operator differs from I - S" }),
                Err(err) => Check::new(key, false, err.to_string()),
            });
        }
    }
    checks
}

/// Printed blocks, periodic diagonals, antisymmetry and M = I - S.
pub fn suite_intersection(opts: &Options) -> SuiteResult {
    let t = Instant::now();
    let mut checks = golden_block_checks(opts.max_d);
    checks.extend(identity_checks(opts.max_d));
    SuiteResult::new("intersection", checks, t)
}

/// Pure-power orbit tables against the gcd rule.
pub fn suite_pure_powers(opts: &Options) -> SuiteResult {
    let t = Instant::now();
    let mut tasks: Vec<(usize, usize)> = (2..=opts.max_d_e2).map(|d| (2, d)).collect();
    for e in 3..=4 {
        tasks.extend((2..=opts.max_d).map(|d| (e, d)));
    }
    let results = run_parallel(&tasks, opts.jobs, |&(e, d)| pure_power_table(e, d));
    let mut checks = Vec::new();
    for (&(e, d), r) in tasks.iter().zip(results) {
        let key = format!("e{e}-d{d}");
        match r {
            Err(err) => checks.push(Check::new(key, false, err.to_string())),
            Ok(table) if table.divisor_case => {
                let n = (e - 1) * (d - 1);
                let count = table.distinct_eigenvalues.unwrap_or(0);
                checks.push(Check::new(
                    key,
                    true,
                    format!("divisor case, reported only: {count} distinct eigenvalues of {n}"),
                ));
            }
            Ok(table) => {
                let bad: Vec<String> = table
                    .entries
                    .iter()
                    .filter(|x| x.pass == Some(false))
                    .map(|x| {
                        format!(
                            "j = {}, cycle {}-{} (position {}): reached {:?}",
                            x.start[1], x.start[0], x.start[1], x.position, x.reached
                        )
                    })
                    .collect();
                checks.push(Check::new(key, bad.is_empty(), bad.join("; ")));
            }
        }
    }
    SuiteResult::new("pure-powers", checks, t)
}

fn grid_fibration(pattern: &str, h: &[usize], g: &[usize]) -> crate::Result<Fibration> {
    Fibration::from_grid(&AbstractGrid::from_pattern(4, 4, pattern, h, g))
}

/// One-value quartic ranks on both diagrams and a generic grid.
pub fn suite_ranks(_opts: &Options) -> SuiteResult {
    let t = Instant::now();
    let one = "a a a / a a a / a a a";
    let cases: [(&str, &str, [usize; 3], usize); 3] = [
        ("diagram-a-one-value", one, [2, 1, 3], 7),
        ("diagram-b-one-value", one, [1, 3, 2], 9),
        ("generic-nine-values", "a b c / d e f / g h i", [2, 1, 3], 0),
    ];
    let checks = cases
        .iter()
        .map(|&(key, pat, g, small)| {
            let r = grid_fibration(pat, &[1, 3, 2], &g).and_then(|f| quartic_rank_profile(&f));
            match r {
                Ok(ranks) => {
                    let dims: Vec<usize> = ranks.iter().map(|x| x.dim).collect();
                    let want: Vec<usize> = (1..=9)
                        .map(|a| {
                            if small == 0 {
                                9
                            } else if a == small {
                                3
                            } else {
                                5
                            }
                        })
                        .collect();
                    Check::new(key, dims == want, format!("dims {dims:?}"))
                }
                Err(err) => Check::new(key, false, err.to_string()),
            }
        })
        .collect();
    SuiteResult::new("ranks", checks, t)
}

/// Every pattern of the two quartic tables.
pub fn suite_tables(_opts: &Options) -> SuiteResult {
    let t = Instant::now();
    let report = verify_tables();
    let checks = report
        .checks
        .iter()
        .map(|c| {
            let key = format!("table{}-row{}-{}", c.table, c.row, c.pattern.replace(' ', ""));
            let mut detail = Vec::new();
            if let Some(e) = &c.error {
                detail.push(e.clone());
            }
            for cl in c.claims.iter().filter(|cl| !cl.pass) {
                detail.push(format!(
                    "numbers {:?}: dims {:?}, listed span {} has dim {}",
                    cl.numbers, cl.dims, cl.span, cl.expected_dim
                ));
            }
            if !c.unexpected_non_simple.is_empty() {
                detail.push(format!("unlisted non-simple numbers {:?}", c.unexpected_non_simple));
            }
            if c.class_by_span != Some(c.class) {
                detail.push(format!("class by spans {:?}, listed {}", c.class_by_span, c.class));
            }
            Check::new(key, c.pass, detail.join("; "))
        })
        .collect();
    SuiteResult::new("tables", checks, t)
}

/// Polynomial pairs (h, g) with their expected class.
pub const CLASS_CASES: &[(&str, &[i64], &[i64], OrbitTag)] = &[
    ("pure-powers", &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 1], OrbitTag::O1),
    ("diagram-a", &[0, 0, 9, 0, -1], &[0, 8, 16, 0, -1], OrbitTag::O2),
    ("diagram-a-negated", &[0, 0, 9, 0, -1], &[0, -8, -16, 0, 1], OrbitTag::O2),
    ("both-decomposable", &[0, 0, -2, 0, 1], &[0, 0, -8, 0, 1], OrbitTag::O3),
    ("same-decomposable", &[0, 0, -2, 0, 1], &[0, 0, -2, 0, 1], OrbitTag::O4),
    ("neither-decomposable", &[0, 8, 16, 0, -1], &[0, 1, 9, 0, -1], OrbitTag::O0),
    ("equal-non-decomposable", &[0, 8, 16, 0, -1], &[0, 8, 16, 0, -1], OrbitTag::O0),
];

pub fn suite_classes(_opts: &Options) -> SuiteResult {
    let t = Instant::now();
    let checks = CLASS_CASES
        .iter()
        .map(|&(key, h, g, want)| match quartic_orbit_class(&RatPoly::from_i64s(h), &RatPoly::from_i64s(g)) {
            Ok(c) => Check::new(
                key,
                c.tag == want,
                format!(
                    "{} (spans agree via {}), pattern {}",
                    c.tag,
                    c.witness.span.symmetry.unwrap_or_default(),
                    c.witness.pattern
                ),
            ),
            Err(err) => Check::new(key, false, err.to_string()),
        })
        .collect();
    SuiteResult::new("classes", checks, t)
}

/// Eigenvalues of I - S_2 against the closed form, to `tol`.
pub fn e2_spectrum_checks(max_d: usize, tol: f64) -> Vec<Check> {
    (2..=max_d.max(2))
        .map(|d| {
            let key = format!("e2-spectrum-d{d}");
            match e2_eigenvalue_check(d, tol) {
                Ok(c) => Check::new(
                    key,
                    c.pass,
                    format!("max error {:.1e}, eigenvector residual {:.1e}", c.max_error, c.eigvec_residual),
                ),
                Err(err) => Check::new(key, false, err.to_string()),
            }
        })
        .collect()
}

/// Fewer distinct eigenvalues than the dimension for e = 3, 3 | d and
/// e = 4, 4 | d, d up to `max_d`.
pub fn deficiency_checks(max_d: usize) -> Vec<Check> {
    let cases =
        (3..=max_d).filter(|d| d % 3 == 0).map(|d| (3, d)).chain((4..=max_d).filter(|d| d % 4 == 0).map(|d| (4, d)));
    cases
        .map(|(e, d)| {
            let key = format!("deficiency-e{e}-d{d}");
            let n = (e - 1) * (d - 1);
            match total_monomial_monodromy(e, d).and_then(|m| distinct_eigenvalue_count(&m.matrix)) {
                Ok(c) => Check::new(key, c < n, format!("{c} distinct of {n}")),
                Err(err) => Check::new(key, false, err.to_string()),
            }
        })
        .collect()
}

/// e = 2 closed-form spectrum and the eigenvalue deficiency in the
/// divisor cases (the latter capped at d = 24).
pub fn suite_eigen(opts: &Options) -> SuiteResult {
    let t = Instant::now();
    let mut checks = e2_spectrum_checks(opts.max_d, 1e-9);
    checks.extend(deficiency_checks(opts.max_d.min(24)));
    SuiteResult::new("eigen", checks, t)
}

pub const SUITES: [&str; 6] = ["intersection", "pure-powers", "ranks", "tables", "classes", "eigen"];

pub fn run_suite(name: &str, opts: &Options) -> Option<SuiteResult> {
    Some(match name {
        "intersection" => suite_intersection(opts),
        "pure-powers" => suite_pure_powers(opts),
        "ranks" => suite_ranks(opts),
        "tables" => suite_tables(opts),
        "classes" => suite_classes(opts),
        "eigen" => suite_eigen(opts),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
}

impl Manifest {
    pub fn new(suites: Vec<SuiteResult>) -> Self {
        Manifest { pass: suites.iter().all(|s| s.pass), suites }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_keeps_order() {
        let tasks: Vec<usize> = (0..50).collect();
        assert_eq!(run_parallel(&tasks, 4, |x| x * 2), tasks.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert!(run_parallel(&[] as &[usize], 3, |x| *x).is_empty());
    }

    #[test]
    fn small_suites_pass() {
        let opts = Options { max_d: 8, max_d_e2: 8, jobs: 2 };
        for name in SUITES {
            let s = run_suite(name, &opts).unwrap();
            let bad: Vec<_> = s.failures().collect();
            assert!(s.pass, "{name}: {bad:?}");
        }
        assert!(run_suite("nope", &opts).is_none());
    }

    #[test]
    fn output_independent_of_jobs() {
        let a = suite_pure_powers(&Options { max_d: 7, max_d_e2: 9, jobs: 1 }).without_timings();
        let b = suite_pure_powers(&Options { max_d: 7, max_d_e2: 9, jobs: 3 }).without_timings();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
