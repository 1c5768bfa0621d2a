//! Join cycles of f(x, y) = h(y) + g(x): the basis built from the two
//! chains of 0-cycles, its intersection matrix, and the grid of critical
//! values of f over that basis.
//!
//! Positions: a join cycle sits at grid cell (row, col) where `row` is the
//! position in the h-chain and `col` the position in the g-chain. The flat
//! basis index runs down the h-chain first: `k = col * (e - 1) + row`.

use serde::{Deserialize, Serialize};

use crate::dynkin::{
    canonical_letters, canonical_monomial_diagram, diagram_for, diagram_from_values, letter, Dynkin0, Side,
};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::polycore::critical::locate_sum;
use crate::polycore::resultant::{interpolate, resultant};
use crate::polycore::{isolate_real_roots, rat, CriticalProfile, IsolatedRoot, Rat, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinBasis {
    pub h: Dynkin0,
    pub g: Dynkin0,
}

impl JoinBasis {
    pub fn e(&self) -> usize {
        self.h.degree()
    }

    pub fn d(&self) -> usize {
        self.g.degree()
    }

    pub fn rows(&self) -> usize {
        self.h.len()
    }

    pub fn cols(&self) -> usize {
        self.g.len()
    }

    pub fn size(&self) -> usize {
        self.rows() * self.cols()
    }

    /// Flat index of cell (row, col), both 0-based.
    pub fn index(&self, row: usize, col: usize) -> usize {
        col * self.rows() + row
    }

    /// Cell (row, col) of a flat index, both 0-based.
    pub fn cell(&self, k: usize) -> (usize, usize) {
        (k % self.rows(), k / self.rows())
    }

    /// Chain labels (h label, g label) of a flat index.
    pub fn labels(&self, k: usize) -> (usize, usize) {
        let (r, c) = self.cell(k);
        (self.h.chain[r], self.g.chain[c])
    }

    pub fn index_of_labels(&self, i: usize, j: usize) -> Result<usize> {
        Ok(self.index(self.h.position(i)?, self.g.position(j)?))
    }

    /// Flat index of a 1-based position or a 1-based (row, col) pair.
    pub fn resolve(&self, cycle: CycleRef) -> Result<usize> {
        let n = self.size();
        match cycle {
            CycleRef::Position(p) => {
                if p == 0 || p > n {
                    return Err(Error::OutOfRange { index: p, max: n });
                }
                Ok(p - 1)
            }
            CycleRef::Cell(r, c) => {
                if r == 0 || r > self.rows() {
                    return Err(Error::OutOfRange { index: r, max: self.rows() });
                }
                if c == 0 || c > self.cols() {
                    return Err(Error::OutOfRange { index: c, max: self.cols() });
                }
                Ok(self.index(r - 1, c - 1))
            }
        }
    }
}

/// A cycle named either by its 1-based basis position or by its 1-based
/// (row, col) cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleRef {
    Position(usize),
    Cell(usize, usize),
}

impl std::str::FromStr for CycleRef {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cycle {s:?}: expected a position k or a cell r-c"));
        match s.split_once('-') {
            Some((r, c)) => {
                Ok(CycleRef::Cell(r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
            }
            None => Ok(CycleRef::Position(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

pub fn build_basis(h: &Dynkin0, g: &Dynkin0) -> Result<JoinBasis> {
    if h.side != Side::H || g.side != Side::G {
        return Err(Error::InvalidDiagram("expected an h-side and a g-side diagram".into()));
    }
    h.validate()?;
    g.validate()?;
    Ok(JoinBasis { h: h.clone(), g: g.clone() })
}

fn adjacent(d: &Dynkin0, a: usize, b: usize) -> bool {
    let pa = d.chain.iter().position(|&l| l == a).unwrap();
    let pb = d.chain.iter().position(|&l| l == b).unwrap();
    pa.abs_diff(pb) == 1
}

/// Intersection number of two join cycles given by chain labels.
fn pairing(basis: &JoinBasis, (i, j): (usize, usize), (i2, j2): (usize, usize)) -> i64 {
    let s0h = |a, b| if adjacent(&basis.h, a, b) { -1 } else { 0 };
    let s0g = |a, b| if adjacent(&basis.g, a, b) { -1 } else { 0 };
    let sgn = |a: usize, b: usize| (b as i64 - a as i64).signum();
    if i == i2 && j != j2 {
        sgn(j, j2) * s0g(j, j2)
    } else if j == j2 && i != i2 {
        sgn(i, i2) * s0h(i, i2)
    } else if (i2 as i64 - i as i64) * (j2 as i64 - j as i64) > 0 {
        sgn(i, i2) * s0h(i, i2) * s0g(j, j2)
    } else {
        0
    }
}

/// Antisymmetric intersection matrix of the join basis.
pub fn intersection_matrix(basis: &JoinBasis) -> IntMatrix {
    let n = basis.size();
    let labels: Vec<(usize, usize)> = (0..n).map(|k| basis.labels(k)).collect();
    let mut m = IntMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let v = pairing(basis, labels[a], labels[b]);
            if v != 0 {
                m.set(a, b, -v);
            }
        }
    }
    m
}

/// Intersection matrix for the pure powers y^e + x^d.
pub fn monomial_intersection_matrix(e: usize, d: usize) -> Result<IntMatrix> {
    let b = build_basis(&canonical_monomial_diagram(e, Side::H)?, &canonical_monomial_diagram(d, Side::G)?)?;
    Ok(intersection_matrix(&b))
}

/// Partition of the basis by the critical value of f at each join cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueGrid {
    pub rows: usize,
    pub cols: usize,
    /// Class of each flat basis index.
    pub class_of: Vec<usize>,
    /// Flat indices per class.
    pub classes: Vec<Vec<usize>>,
    /// Classes are listed by increasing critical value.
    pub ordered: bool,
}

impl ValueGrid {
    pub fn from_class_of(rows: usize, cols: usize, class_of: Vec<usize>, ordered: bool) -> Self {
        let k = class_of.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); k];
        for (i, &c) in class_of.iter().enumerate() {
            classes[c].push(i);
        }
        ValueGrid { rows, cols, class_of, classes, ordered }
    }

    pub fn single(rows: usize, cols: usize) -> Self {
        Self::from_class_of(rows, cols, vec![0; rows * cols], true)
    }

    pub fn num_values(&self) -> usize {
        self.classes.len()
    }

    fn class(&self, row: usize, col: usize) -> usize {
        self.class_of[col * self.rows + row]
    }

    /// Letter grid drawn with one line per g-chain position and one column
    /// per h-chain position.
    pub fn letters(&self) -> Vec<Vec<String>> {
        (0..self.cols).map(|c| (0..self.rows).map(|r| letter(self.class(r, c))).collect()).collect()
    }

    /// Same as `letters` with letters renamed by first appearance.
    pub fn pattern(&self) -> String {
        let flat: Vec<String> = self.letters().concat();
        let canon = canonical_letters(&flat);
        canon.chunks(self.rows).map(|r| r.join(" ")).collect::<Vec<_>>().join(" / ")
    }
}

/// A letter grid as read from JSON. `grid` has one line per g-chain
/// position, each with one letter per h-chain position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractGrid {
    pub e: usize,
    pub d: usize,
    pub grid: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_chain: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_chain: Option<Vec<usize>>,
}

impl AbstractGrid {
    /// Parse a pattern written "a b a / c d c / ..." (lines follow the g chain).
    pub fn from_pattern(e: usize, d: usize, pattern: &str, h_chain: &[usize], g_chain: &[usize]) -> Self {
        let grid = pattern
            .split('/')
            .map(|line| line.split_whitespace().map(|s| s.trim_end_matches('*').to_string()).collect())
            .collect();
        AbstractGrid { e, d, grid, h_chain: Some(h_chain.to_vec()), g_chain: Some(g_chain.to_vec()) }
    }
}

fn class_values(d: &Dynkin0, ids: Vec<String>, side: Side) -> Result<Dynkin0> {
    let all_same = ids.iter().all(|s| s == &ids[0]);
    let mut out = Dynkin0 { chain: d.chain.clone(), values: canonical_letters(&ids), side, collapsed: false };
    if all_same && out.len() > 1 {
        out.collapsed = true;
        out.values = (0..out.len()).map(letter).collect();
    }
    out.validate_chain().map_err(|e| Error::InvalidGrid(e.to_string()))?;
    Ok(out)
}

/// Check the grid against the chains and derive the diagrams with their
/// value patterns.
pub fn grid_diagrams(ag: &AbstractGrid) -> Result<(JoinBasis, ValueGrid)> {
    let (e, d) = (ag.e, ag.d);
    if e < 2 || d < 2 {
        return Err(Error::InvalidGrid(format!("need e, d >= 2, got e = {e}, d = {d}")));
    }
    if ag.grid.len() != d - 1 || ag.grid.iter().any(|l| l.len() != e - 1) {
        return Err(Error::InvalidGrid(format!("expected {} lines of {} letters", d - 1, e - 1)));
    }
    let chain_or = |c: &Option<Vec<usize>>, n: usize, side| match c {
        Some(c) => Ok(Dynkin0 { chain: c.clone(), values: (0..c.len()).map(letter).collect(), side, collapsed: true }),
        None => canonical_monomial_diagram(n, side),
    };
    let h0 = chain_or(&ag.h_chain, e, Side::H)?;
    let g0 = chain_or(&ag.g_chain, d, Side::G)?;
    h0.validate().map_err(|e| Error::InvalidGrid(e.to_string()))?;
    g0.validate().map_err(|e| Error::InvalidGrid(e.to_string()))?;
    if h0.len() != e - 1 || g0.len() != d - 1 {
        return Err(Error::InvalidGrid("chain lengths do not match e and d".into()));
    }
    let (rows, cols) = (e - 1, d - 1);
    let mut names: Vec<&str> = Vec::new();
    let mut class_of = vec![0; rows * cols];
    for c in 0..cols {
        for r in 0..rows {
            let s = ag.grid[c][r].trim_end_matches('*');
            let k = names.iter().position(|&t| t == s).unwrap_or_else(|| {
                names.push(s);
                names.len() - 1
            });
            class_of[c * rows + r] = k;
        }
    }
    let grid = ValueGrid::from_class_of(rows, cols, class_of, false);
    let basis0 = JoinBasis { h: h0, g: g0 };
    validate_grid(&grid, &basis0)?;
    // value identifiers along each chain from the first line / column
    let g_ids: Vec<String> = (0..cols).map(|c| grid.class(0, c).to_string()).collect();
    let h_ids: Vec<String> = (0..rows).map(|r| grid.class(r, 0).to_string()).collect();
    let h = class_values(&basis0.h, h_ids, Side::H)?;
    let g = class_values(&basis0.g, g_ids, Side::G)?;
    Ok((JoinBasis { h, g }, grid))
}

/// Consistency rules for a value grid over a basis:
/// rule 1, equal values along one line of the grid repeat on every
/// parallel line, and equal values on one chain form a block of consecutive
/// labels; rule 2, two cells with crossing labels (i < k, j > l) can only
/// share a value when both chains repeat a value there.
pub fn validate_grid(grid: &ValueGrid, basis: &JoinBasis) -> Result<()> {
    let (rows, cols) = (basis.rows(), basis.cols());
    if grid.rows != rows || grid.cols != cols || grid.class_of.len() != rows * cols {
        return Err(Error::InvalidGrid("grid shape does not match the basis".into()));
    }
    // class by labels, 1-based
    let cls = |i: usize, j: usize| grid.class_of[basis.index_of_labels(i, j).unwrap()];
    for i in 1..=rows {
        for k in 1..=rows {
            for j in 1..=cols {
                for l in 1..=cols {
                    if cls(i, j) == cls(i, l) && cls(k, j) != cls(k, l) {
                        return Err(Error::InvalidGrid(format!(
                            "rule 1: g-values {j} and {l} agree on h-row {i} but not on h-row {k}"
                        )));
                    }
                    if cls(i, j) == cls(k, j) && cls(i, l) != cls(k, l) {
                        return Err(Error::InvalidGrid(format!(
                            "rule 1: h-values {i} and {k} agree on g-column {j} but not on g-column {l}"
                        )));
                    }
                    if i < k && j > l && cls(i, j) == cls(k, l) && (cls(i, j) != cls(k, j) || cls(i, j) != cls(i, l)) {
                        return Err(Error::InvalidGrid(format!(
                            "rule 2: cells ({i},{j}) and ({k},{l}) share a value across a crossing"
                        )));
                    }
                }
            }
        }
    }
    let blocks = |n: usize, same: &dyn Fn(usize, usize) -> bool| -> bool {
        (1..=n).all(|a| (a + 2..=n).all(|b| !same(a, b) || (a + 1..b).all(|m| same(a, m))))
    };
    if !blocks(cols, &|a, b| cls(1, a) == cls(1, b)) || !blocks(rows, &|a, b| cls(a, 1) == cls(b, 1)) {
        return Err(Error::InvalidGrid("rule 1: equal values on a chain must carry consecutive labels".into()));
    }
    Ok(())
}

/// Critical value of each chain label: labels rank the values. A pure
/// power has one degenerate point carrying every label.
fn label_values(prof: &CriticalProfile, side: Side, n: usize) -> Option<Vec<usize>> {
    if prof.crit_values.len() == 1 {
        return Some(vec![0; n]);
    }
    if prof.value_of_point.len() != n {
        return None;
    }
    let mut v = prof.value_of_point.clone();
    v.sort_unstable();
    if side == Side::H {
        v.reverse();
    }
    Some(v)
}

/// Polynomial whose roots are the sums a + b, a a root of `p`, b of `q`.
pub fn sum_polynomial(p: &RatPoly, q: &RatPoly) -> RatPoly {
    let n = p.degree().unwrap() * q.degree().unwrap();
    let xs: Vec<Rat> = (0..=n as i64).map(rat).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|t| {
            // q(t - y) as a polynomial in y
            let qy = q.compose(&RatPoly::new(vec![t.clone(), rat(-1)]));
            resultant(p, &qy)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Exact grid of critical values of h(y) + g(x) over the basis.
pub fn value_grid(hp: &CriticalProfile, gp: &CriticalProfile, basis: &JoinBasis) -> Result<ValueGrid> {
    let (rows, cols) = (basis.rows(), basis.cols());
    let (Some(hv), Some(gv)) = (label_values(hp, Side::H, rows), label_values(gp, Side::G, cols)) else {
        return Err(Error::DimensionMismatch {
            expected: rows * cols,
            got: hp.value_of_point.len() * gp.value_of_point.len(),
        });
    };
    let ph = squarefree_of_values(&hp.crit_values);
    let pg = squarefree_of_values(&gp.crit_values);
    let sums = isolate_real_roots(&sum_polynomial(&ph, &pg))?;
    let mut memo = std::collections::BTreeMap::new();
    let mut class_of = vec![0; rows * cols];
    for k in 0..rows * cols {
        let (i, j) = basis.labels(k);
        let key = (hv[i - 1], gv[j - 1]);
        let root =
            *memo.entry(key).or_insert_with(|| locate_sum(&hp.crit_values[key.0], &gp.crit_values[key.1], &sums));
        class_of[k] = root;
    }
    // compress root indices to 0..m keeping the order
    let mut used: Vec<usize> = class_of.clone();
    used.sort_unstable();
    used.dedup();
    let class_of = class_of.iter().map(|c| used.binary_search(c).unwrap()).collect();
    Ok(ValueGrid::from_class_of(rows, cols, class_of, true))
}

/// Squarefree polynomial vanishing on the given real values.
fn squarefree_of_values(vals: &[IsolatedRoot]) -> RatPoly {
    let mut polys: Vec<&RatPoly> = vals.iter().map(|v| v.poly()).collect();
    polys.sort_by_key(|p| p.to_strings());
    polys.dedup();
    polys.into_iter().fold(RatPoly::one(), |acc, p| &acc * p).squarefree_part()
}

/// Everything needed to run monodromy computations on h(y) + g(x).
#[derive(Clone, Debug, Serialize)]
pub struct Fibration {
    pub basis: JoinBasis,
    pub form: IntMatrix,
    pub grid: ValueGrid,
}

impl Fibration {
    pub fn from_polys(h: &RatPoly, g: &RatPoly) -> Result<Self> {
        let (hd, hp) = diagram_for(h, Side::H)?;
        let (gd, gp) = diagram_for(g, Side::G)?;
        let basis = build_basis(&hd, &gd)?;
        let grid = value_grid(&hp, &gp, &basis)?;
        let form = intersection_matrix(&basis);
        Ok(Fibration { basis, form, grid })
    }

    /// y^e + x^d: one critical value.
    pub fn monomial(e: usize, d: usize) -> Result<Self> {
        let basis = build_basis(&canonical_monomial_diagram(e, Side::H)?, &canonical_monomial_diagram(d, Side::G)?)?;
        let grid = ValueGrid::single(basis.rows(), basis.cols());
        let form = intersection_matrix(&basis);
        Ok(Fibration { basis, form, grid })
    }

    pub fn from_grid(ag: &AbstractGrid) -> Result<Self> {
        let (basis, grid) = grid_diagrams(ag)?;
        let form = intersection_matrix(&basis);
        Ok(Fibration { basis, form, grid })
    }

    /// Fibration of y-values `h_vals` and x-values `g_vals`: the critical
    /// values of h and g in x-order, as for real Morse polynomials.
    /// A side with a single repeated value is read as a pure power.
    pub fn from_critical_values(h_vals: &[i64], g_vals: &[i64]) -> Result<Self> {
        let diagram = |vals: &[i64], side| {
            if vals.len() > 1 && vals.iter().all(|v| *v == vals[0]) {
                canonical_monomial_diagram(vals.len() + 1, side)
            } else {
                diagram_from_values(vals, side)
            }
        };
        let hd = diagram(h_vals, Side::H)?;
        let gd = diagram(g_vals, Side::G)?;
        let basis = build_basis(&hd, &gd)?;
        // label l carries the l-th value in ranking order
        let ranked = |vals: &[i64], side: Side| {
            let mut v = vals.to_vec();
            v.sort_unstable();
            if side == Side::H {
                v.reverse();
            }
            v
        };
        let (hv, gv) = (ranked(h_vals, Side::H), ranked(g_vals, Side::G));
        let sums: Vec<i64> = (0..basis.size())
            .map(|k| {
                let (i, j) = basis.labels(k);
                hv[i - 1] + gv[j - 1]
            })
            .collect();
        let mut distinct = sums.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let class_of = sums.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let grid = ValueGrid::from_class_of(basis.rows(), basis.cols(), class_of, true);
        validate_grid(&grid, &basis)?;
        let form = intersection_matrix(&basis);
        Ok(Fibration { basis, form, grid })
    }

    pub fn size(&self) -> usize {
        self.basis.size()
    }
}
