//! Verdicts on single cycles (simple or not, and which diagram feature
//! explains it), the gcd rule for pure powers, and the orbit classes of
//! quartic direct sums.

pub mod tables;

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dynkin::{detect_symmetry, Dynkin0, Side, SymmetryInfo};
use crate::error::{Error, Result};
use crate::joincycles::{CycleRef, Fibration, JoinBasis};
use crate::linalg::RatSubspace;
use crate::monodromy::{distinct_eigenvalue_count, total_monomial_monodromy, OrbitReport, OrbitSpan, Orbits};
use crate::polycore::quartic::{depress_quartic, ideal_membership_d4, DepressedQuartic, IdealMembership};
use crate::polycore::{rat, Rat, RatPoly};

pub use tables::{
    table_rows, verify_pattern, verify_tables, ClaimCheck, PatternCheck, TableRow, TablesReport, DIAGRAM_A, DIAGRAM_B,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Explanation {
    Full,
    HorizontalSymmetry,
    VerticalSymmetry,
    QuarticPattern,
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleVerdict {
    /// 1-based (row, col).
    pub cycle: [usize; 2],
    /// 1-based flat position.
    pub position: usize,
    /// (h label, g label).
    pub labels: [usize; 2],
    pub simple: bool,
    pub span: OrbitReport,
    pub explanation: Explanation,
}

/// Symmetries of both chains, each read as a g-side diagram.
struct Symmetries {
    h_single: bool,
    g_single: bool,
    h: SymmetryInfo,
    g: SymmetryInfo,
    e: usize,
    d: usize,
}

impl Symmetries {
    fn of(basis: &JoinBasis) -> Result<Self> {
        let as_g = |d: &Dynkin0| Dynkin0 { side: Side::G, ..d.clone() };
        Ok(Symmetries {
            h_single: basis.h.distinct_values() == 1,
            g_single: basis.g.distinct_values() == 1,
            h: detect_symmetry(&as_g(&basis.h), basis.d())?,
            g: detect_symmetry(&basis.g, basis.e())?,
            e: basis.e(),
            d: basis.d(),
        })
    }

    fn explain(&self, row: usize, col: usize, simple: bool) -> Explanation {
        if simple {
            Explanation::Full
        } else if self.h_single && self.g.column_is_symmetric(col + 1) {
            Explanation::HorizontalSymmetry
        } else if self.h_single && self.e == 4 && row == 1 {
            Explanation::VerticalSymmetry
        } else if self.g_single && self.h.column_is_symmetric(row + 1) {
            Explanation::HorizontalSymmetry
        } else if self.g_single && self.d == 4 && col == 1 {
            Explanation::VerticalSymmetry
        } else if self.e == 4 && self.d == 4 {
            Explanation::QuarticPattern
        } else {
            Explanation::Unexplained
        }
    }
}

/// For e = 4, the span of the cycles killed by folding y to y^2: for every
/// g-chain position, the cycle over the middle h point and the sum of the
/// two cycles over the outer h points.
pub fn fold_kernel(basis: &JoinBasis) -> Result<RatSubspace> {
    if basis.e() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: basis.e() });
    }
    let n = basis.size();
    let vector = |cells: &[usize]| {
        let mut v = vec![Rat::zero(); n];
        for &k in cells {
            v[k] = rat(1);
        }
        v
    };
    let gens: Vec<Vec<Rat>> = (0..basis.cols())
        .flat_map(|c| [vector(&[basis.index(1, c)]), vector(&[basis.index(0, c), basis.index(2, c)])])
        .collect();
    Ok(RatSubspace::span(n, &gens))
}

fn verdict(f: &Fibration, sym: &Symmetries, k: usize, span: &OrbitSpan) -> CycleVerdict {
    let (row, col) = f.basis.cell(k);
    let (i, j) = f.basis.labels(k);
    let simple = span.is_full();
    CycleVerdict {
        cycle: [row + 1, col + 1],
        position: k + 1,
        labels: [i, j],
        simple,
        span: span.report(&f.basis),
        explanation: sym.explain(row, col, simple),
    }
}

pub fn classify_cycle(f: &Fibration, cycle: CycleRef) -> Result<CycleVerdict> {
    let k = f.basis.resolve(cycle)?;
    let span = Orbits::for_fibration(f)?.of_cycle(k)?;
    Ok(verdict(f, &Symmetries::of(&f.basis)?, k, &span))
}

/// Verdicts for every basis cycle, in basis order.
pub fn classify_all(f: &Fibration) -> Result<Vec<CycleVerdict>> {
    let orbits = Orbits::for_fibration(f)?;
    let sym = Symmetries::of(&f.basis)?;
    (0..f.size()).map(|k| Ok(verdict(f, &sym, k, &orbits.of_cycle(k)?))).collect()
}

/// One start cycle of the pure-power table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurePowerEntry {
    /// 1-based (row, col).
    pub start: [usize; 2],
    pub position: usize,
    /// gcd(d, col).
    pub r: usize,
    pub dim: usize,
    /// Basis cycles in the span, 1-based (row, col), sorted.
    pub reached: Vec<[usize; 2]>,
    /// What the gcd rule predicts; absent in the divisor cases.
    pub expected: Option<Vec<[usize; 2]>>,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurePowerTable {
    pub e: usize,
    pub d: usize,
    /// e = 3 with 3 | d, or e = 4 with 4 | d: no rule to compare against.
    pub divisor_case: bool,
    /// Distinct eigenvalues of I - S, computed in the divisor cases.
    pub distinct_eigenvalues: Option<usize>,
    pub entries: Vec<PurePowerEntry>,
    pub pass: bool,
}

pub fn is_divisor_case(e: usize, d: usize) -> bool {
    (e == 3 && d.is_multiple_of(3)) || (e == 4 && d.is_multiple_of(4))
}

/// Basis cycles predicted by the gcd rule for the start cell (row, col),
/// 1-based: columns are the multiples of r = gcd(d, col), rows depend on e.
pub fn gcd_rule(e: usize, d: usize, row: usize, col: usize) -> Result<Vec<[usize; 2]>> {
    if !(2..=4).contains(&e) {
        return Err(Error::UnsupportedExponent(e));
    }
    let r = d.gcd(&col);
    let rows: Vec<usize> = match (e, row) {
        (2, _) => vec![1],
        (3, _) => vec![1, 2],
        (4, 2) => vec![2],
        _ => vec![1, 2, 3],
    };
    let mut out: Vec<[usize; 2]> =
        (1..d).filter(|l| l % r == 0).flat_map(|l| rows.iter().map(move |&m| [m, l])).collect();
    out.sort_unstable();
    Ok(out)
}

pub fn pure_power_table(e: usize, d: usize) -> Result<PurePowerTable> {
    if !(2..=4).contains(&e) {
        return Err(Error::UnsupportedExponent(e));
    }
    let m = total_monomial_monodromy(e, d)?;
    let n = m.dim();
    let orbits = Orbits::new(n, std::slice::from_ref(&m))?;
    let divisor_case = is_divisor_case(e, d);
    let rows = e - 1;
    let mut entries = Vec::with_capacity(n);
    for k in 0..n {
        let (row, col) = (k % rows + 1, k / rows + 1);
        let span = orbits.of_cycle(k)?;
        let mut reached: Vec<[usize; 2]> = span.basis_cycles.iter().map(|&c| [c % rows + 1, c / rows + 1]).collect();
        reached.sort_unstable();
        let expected = if divisor_case { None } else { Some(gcd_rule(e, d, row, col)?) };
        let pass = expected.as_ref().map(|x| *x == reached);
        entries.push(PurePowerEntry {
            start: [row, col],
            position: k + 1,
            r: d.gcd(&col),
            dim: span.dim(),
            reached,
            expected,
            pass,
        });
    }
    let distinct_eigenvalues = if divisor_case { Some(distinct_eigenvalue_count(&m.matrix)?) } else { None };
    let pass = entries.iter().all(|x| x.pass != Some(false));
    Ok(PurePowerTable { e, d, divisor_case, distinct_eigenvalues, entries, pass })
}

/// Quartic cycles are numbered by labels: number = 3 (i - 1) + j for the
/// join cycle of h label i and g label j.
pub fn number_of(basis: &JoinBasis, k: usize) -> usize {
    let (i, j) = basis.labels(k);
    3 * (i - 1) + j
}

pub fn index_of_number(basis: &JoinBasis, number: usize) -> Result<usize> {
    if !(1..=9).contains(&number) {
        return Err(Error::OutOfRange { index: number, max: 9 });
    }
    basis.index_of_labels((number - 1) / 3 + 1, (number - 1) % 3 + 1)
}

fn require_quartic(basis: &JoinBasis) -> Result<()> {
    for n in [basis.e(), basis.d()] {
        if n != 4 {
            return Err(Error::NotQuartic(n));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub number: usize,
    /// 1-based (row, col).
    pub cell: [usize; 2],
    pub dim: usize,
}

/// Orbit dimension of every number, in number order.
pub fn quartic_rank_profile(f: &Fibration) -> Result<Vec<RankEntry>> {
    require_quartic(&f.basis)?;
    let orbits = Orbits::for_fibration(f)?;
    (1..=9)
        .map(|a| {
            let k = index_of_number(&f.basis, a)?;
            let (r, c) = f.basis.cell(k);
            Ok(RankEntry { number: a, cell: [r + 1, c + 1], dim: orbits.of_cycle(k)?.dim() })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitTag {
    O0,
    O1,
    O2,
    O3,
    O4,
}

impl fmt::Display for OrbitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for OrbitTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "O0" => OrbitTag::O0,
            "O1" => OrbitTag::O1,
            "O2" => OrbitTag::O2,
            "O3" => OrbitTag::O3,
            "O4" => OrbitTag::O4,
            _ => return Err(Error::Parse(format!("unknown orbit class {s:?}"))),
        })
    }
}

/// Spans of the non-simple cells of each class, written on the picture grid:
/// v_ij is line i (g-chain position) and column j (h-chain position). Cells
/// not listed are simple.
const SIGNATURES: &[(OrbitTag, &[(&[&str], &str)])] = &[
    (OrbitTag::O0, &[]),
    (OrbitTag::O2, &[(&["21", "22", "23"], "21,22,23,11+31,12+32,13+33")]),
    (
        OrbitTag::O3,
        &[
            (&["21", "23"], "21,22,23,11+31,12+32,13+33"),
            (&["12", "32"], "12,22,32,11+13,21+23,31+33"),
            (&["22"], "22,12+32,21+23,11+13+31+33"),
        ],
    ),
    (
        OrbitTag::O4,
        &[
            (&["21", "23"], "21,22,23,11+31,12+32,13+33"),
            (&["12", "32"], "12,22,32,11+13,21+23,31+33"),
            (&["11", "33"], "11,22,33,12-21,23-32,13+31,12+21+23+32"),
            (&["13", "31"], "13,22,31,21-32,12-23,11+33,12+21+23+32"),
            (&["22"], "22,12+32,21+23,11+13+31+33"),
        ],
    ),
];

/// Parse "12+21-33"-style combinations: signed sums of basis names.
pub(crate) fn parse_combination(token: &str) -> Result<Vec<(i64, usize)>> {
    let bad = || Error::Parse(format!("bad combination {token:?}"));
    let mut out = Vec::new();
    let mut sign = 1;
    let mut num = String::new();
    for ch in token.trim().chars().chain(std::iter::once('+')) {
        match ch {
            '0'..='9' => num.push(ch),
            '+' | '-' => {
                out.push((sign, num.parse().map_err(|_| bad())?));
                num.clear();
                sign = if ch == '-' { -1 } else { 1 };
            }
            c if c.is_whitespace() => {}
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

/// Subspace spanned by comma-separated combinations, with `index` mapping a
/// basis name to a flat index.
pub(crate) fn parse_span(
    n: usize,
    spec: &str,
    index: &dyn Fn(usize) -> Result<usize>,
) -> Result<crate::linalg::RatSubspace> {
    let vectors = spec
        .split(',')
        .map(|tok| {
            let mut v = vec![Rat::zero(); n];
            for (s, name) in parse_combination(tok)? {
                v[index(name)?] += rat(s);
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::linalg::RatSubspace::span(n, &vectors))
}

/// The eight symmetries of the 3x3 picture grid, acting on 1-based (i, j).
fn grid_symmetry(s: usize, (i, j): (usize, usize)) -> (usize, usize) {
    let (i, j) = if s & 4 != 0 { (j, i) } else { (i, j) };
    let i = if s & 1 != 0 { 4 - i } else { i };
    let j = if s & 2 != 0 { 4 - j } else { j };
    (i, j)
}

const SYMMETRY_NAMES: [&str; 8] = [
    "identity",
    "flip-lines",
    "flip-columns",
    "rotate-180",
    "transpose",
    "rotate-left",
    "rotate-right",
    "anti-transpose",
];

/// Flat index of the picture cell v_ij.
fn picture_index(basis: &JoinBasis, (i, j): (usize, usize)) -> usize {
    basis.index(j - 1, i - 1)
}

/// How the span route decided a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanSignature {
    /// Orbit dimensions in number order.
    pub dims: Vec<usize>,
    pub tag: Option<OrbitTag>,
    /// Grid symmetry carrying the class's listed spans onto the computed ones.
    pub symmetry: Option<String>,
}

/// Class read off the per-cell orbit spans (`spans` in basis order).
pub fn span_signature(f: &Fibration, spans: &[OrbitSpan]) -> Result<SpanSignature> {
    require_quartic(&f.basis)?;
    let b = &f.basis;
    let dims: Vec<usize> = (1..=9).map(|a| Ok(spans[index_of_number(b, a)?].dim())).collect::<Result<_>>()?;
    let mut sorted = dims.clone();
    sorted.sort_unstable();
    // a single critical value: the one-operator profile, centre of dim 3
    if f.grid.num_values() == 1 {
        let centre = spans[picture_index(b, (2, 2))].dim();
        let tag = (sorted == [3, 5, 5, 5, 5, 5, 5, 5, 5] && centre == 3).then_some(OrbitTag::O1);
        return Ok(SpanSignature { dims, tag, symmetry: tag.map(|_| "identity".into()) });
    }
    for (tag, listed) in SIGNATURES {
        for (s, name) in SYMMETRY_NAMES.iter().enumerate() {
            if matches_signature(b, spans, listed, s)? {
                return Ok(SpanSignature { dims, tag: Some(*tag), symmetry: Some(name.to_string()) });
            }
        }
    }
    Ok(SpanSignature { dims, tag: None, symmetry: None })
}

fn matches_signature(b: &JoinBasis, spans: &[OrbitSpan], listed: &[(&[&str], &str)], s: usize) -> Result<bool> {
    let cell = |name: usize| grid_symmetry(s, (name / 10, name % 10));
    let index = |name: usize| -> Result<usize> {
        if !(11..=33).contains(&name) || name.is_multiple_of(10) || name % 10 > 3 {
            return Err(Error::Parse(format!("bad grid cell v{name}")));
        }
        Ok(picture_index(b, cell(name)))
    };
    let mut covered = [false; 9];
    for (cells, spec) in listed {
        let want = parse_span(9, spec, &index)?;
        for c in *cells {
            let k = index(c.parse().map_err(|_| Error::Parse(c.to_string()))?)?;
            covered[k] = true;
            if spans[k].subspace != want {
                return Ok(false);
            }
        }
    }
    Ok((0..9).all(|k| covered[k] || spans[k].is_full()))
}

/// Evidence for a class assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub pattern: String,
    pub h_chain: Vec<usize>,
    pub g_chain: Vec<usize>,
    pub h: IdealMembership,
    pub g: IdealMembership,
    /// Double critical value minus the single one, for decomposable quartics.
    pub h_spread: Option<String>,
    pub g_spread: Option<String>,
    pub by_ideal: OrbitTag,
    pub span: SpanSignature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub tag: OrbitTag,
    pub witness: ClassWitness,
}

fn spread(q: &DepressedQuartic) -> Option<Rat> {
    q.r1.is_zero().then(|| -&q.lead * &q.r2 * &q.r2 / rat(4))
}

/// Class from the decomposability of h and g: a quartic is decomposable
/// when its depressed form has no linear term.
pub fn class_by_decomposability(h: &RatPoly, g: &RatPoly) -> Result<OrbitTag> {
    let (qh, qg) = (depress_quartic(h)?, depress_quartic(g)?);
    Ok(tag_from(&qh, &qg))
}

fn tag_from(qh: &DepressedQuartic, qg: &DepressedQuartic) -> OrbitTag {
    let pure = |q: &DepressedQuartic| q.r1.is_zero() && q.r2.is_zero();
    match (spread(qh), spread(qg)) {
        (Some(_), Some(_)) if pure(qh) && pure(qg) => OrbitTag::O1,
        (Some(a), Some(b)) if a == b => OrbitTag::O4,
        (Some(_), Some(_)) => OrbitTag::O3,
        (Some(_), None) | (None, Some(_)) => OrbitTag::O2,
        (None, None) => OrbitTag::O0,
    }
}

/// Orbit class of h(y) + g(x) for quartics h, g with real critical points,
/// decided twice: by decomposability and by the per-cell orbit spans. The
/// two must agree.
pub fn quartic_orbit_class(h: &RatPoly, g: &RatPoly) -> Result<OrbitClass> {
    let (qh, qg) = (depress_quartic(h)?, depress_quartic(g)?);
    let f = Fibration::from_polys(h, g)?;
    let orbits = Orbits::for_fibration(&f)?;
    let spans = (0..9).map(|k| orbits.of_cycle(k)).collect::<Result<Vec<_>>>()?;
    let span = span_signature(&f, &spans)?;
    let by_ideal = tag_from(&qh, &qg);
    if span.tag != Some(by_ideal) {
        return Err(Error::ClassMismatch {
            by_ideal: by_ideal.to_string(),
            by_span: span.tag.map_or_else(|| format!("no class (dims {:?})", span.dims), |t| t.to_string()),
        });
    }
    Ok(OrbitClass {
        tag: by_ideal,
        witness: ClassWitness {
            pattern: f.grid.pattern(),
            h_chain: f.basis.h.chain.clone(),
            g_chain: f.basis.g.chain.clone(),
            h: ideal_membership_d4(h)?,
            g: ideal_membership_d4(g)?,
            h_spread: spread(&qh).map(|x| x.to_string()),
            g_spread: spread(&qg).map(|x| x.to_string()),
            by_ideal,
            span,
        },
    })
}
