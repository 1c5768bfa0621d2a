//! Chains of vanishing 0-cycles of a one-variable polynomial.
//!
//! A chain lists, for each critical point taken along the real line, the
//! label of its 0-cycle. Labels rank the critical values: increasing for the
//! g side, decreasing for the h side, ties broken from the left. The chain is
//! read left to right or right to left so that the first label is below the
//! last one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{critical_values_degree, CriticalProfile, RatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    G,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dynkin0 {
    /// Label of the 0-cycle at each chain position.
    pub chain: Vec<usize>,
    /// Critical value identifier at each chain position; equal strings mean
    /// equal critical values.
    pub values: Vec<String>,
    pub side: Side,
    /// All critical values coincide (the pure power x^d); `values` then only
    /// carries placeholders.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub collapsed: bool,
}

/// Letter names a, b, ..., z, aa, ab, ...
pub fn letter(mut k: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

/// Rename identifiers to letters in order of first appearance.
pub fn canonical_letters<S: AsRef<str>>(ids: &[S]) -> Vec<String> {
    let mut seen: Vec<&str> = Vec::new();
    ids.iter()
        .map(|s| {
            let s = s.as_ref();
            let k = seen.iter().position(|&t| t == s).unwrap_or_else(|| {
                seen.push(s);
                seen.len() - 1
            });
            letter(k)
        })
        .collect()
}

impl Dynkin0 {
    pub fn new(chain: Vec<usize>, values: Vec<String>, side: Side) -> Result<Self> {
        let d = Dynkin0 { chain, values, side, collapsed: false };
        d.validate()?;
        Ok(d)
    }

    /// Number of 0-cycles (degree minus one).
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.chain.len() + 1
    }

    /// Chain is a permutation and there is one value per cycle. Adjacent
    /// equal values are allowed: a grid may describe a degenerate critical
    /// point through the diagram of its Morse deformation.
    pub fn validate_chain(&self) -> Result<()> {
        let n = self.chain.len();
        if n == 0 {
            return Err(Error::InvalidDiagram("empty chain".into()));
        }
        let mut seen = vec![false; n + 1];
        for &l in &self.chain {
            if l == 0 || l > n || seen[l] {
                return Err(Error::InvalidDiagram(format!("chain {:?} is not a permutation of 1..={n}", self.chain)));
            }
            seen[l] = true;
        }
        if self.values.len() != n {
            return Err(Error::InvalidDiagram(format!("{} values for {n} cycles", self.values.len())));
        }
        Ok(())
    }

    /// `validate_chain` plus distinct values at x-adjacent critical points.
    pub fn validate(&self) -> Result<()> {
        self.validate_chain()?;
        if !self.collapsed {
            if let Some(w) = self.values.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidDiagram(format!("adjacent critical points share the value {:?}", w[0])));
            }
        }
        Ok(())
    }

    /// Chain position (0-based) of a label.
    pub fn position(&self, label: usize) -> Result<usize> {
        self.chain.iter().position(|&l| l == label).ok_or(Error::OutOfRange { index: label, max: self.chain.len() })
    }

    /// Value identifiers with the collapse applied.
    pub fn effective_values(&self) -> Vec<String> {
        if self.collapsed {
            vec![letter(0); self.len()]
        } else {
            self.values.clone()
        }
    }

    pub fn distinct_values(&self) -> usize {
        let mut v = self.effective_values();
        v.sort();
        v.dedup();
        v.len()
    }
}

/// Diagram of a Morse polynomial whose critical points are all real.
pub fn build_chain_diagram(profile: &CriticalProfile, side: Side) -> Result<Dynkin0> {
    if let Some(&m) = profile.point_multiplicity.iter().find(|&&m| m > 1) {
        return Err(Error::NonMorse(m));
    }
    diagram_from_values(&profile.value_of_point, side)
}

/// Diagram from critical values listed in x-order (any totally ordered
/// type; equal entries are equal values). Labels rank the values, ascending
/// on the g side and descending on the h side, ties left first; the chain
/// is read right to left when that puts a smaller label first.
pub fn diagram_from_values<T: Ord + ToString>(vals: &[T], side: Side) -> Result<Dynkin0> {
    let n = vals.len();
    let rank = |order: &[usize]| -> Vec<usize> {
        // order[p] = x-position of the p-th point in reading order
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&p, &q| {
            let c = vals[order[p]].cmp(&vals[order[q]]);
            let c = if side == Side::G { c } else { c.reverse() };
            c.then(p.cmp(&q))
        });
        let mut chain = vec![0; n];
        for (r, &p) in idx.iter().enumerate() {
            chain[p] = r + 1;
        }
        chain
    };
    let mut order: Vec<usize> = (0..n).collect();
    let mut chain = rank(&order);
    if n > 1 && chain[0] > chain[n - 1] {
        order.reverse();
        chain = rank(&order);
    }
    // value identifiers: position of the value among the distinct ones
    let mut distinct: Vec<&T> = vals.iter().collect();
    distinct.sort();
    distinct.dedup();
    let ids: Vec<String> = order.iter().map(|&p| distinct.binary_search(&&vals[p]).unwrap().to_string()).collect();
    Dynkin0::new(chain, canonical_letters(&ids), side)
}

/// The chain of the pure power x^d: (l+1, 1, l+2, 2, ...) with l = (d-1)/2.
pub fn canonical_monomial_diagram(d: usize, side: Side) -> Result<Dynkin0> {
    if d < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: d });
    }
    let n = d - 1;
    let l = (d - 1) / 2;
    let chain: Vec<usize> = (0..n).map(|k| if k % 2 == 0 { l + 1 + k / 2 } else { 1 + k / 2 }).collect();
    let values = (0..n).map(letter).collect();
    let dg = Dynkin0 { chain, values, side, collapsed: true };
    dg.validate()?;
    Ok(dg)
}

/// True when p is a(x - b)^n + c.
pub fn is_pure_power(p: &RatPoly) -> bool {
    let Some(n) = p.degree() else { return false };
    if n < 2 {
        return false;
    }
    let m = p.monic();
    let b = -m.coeff(n - 1) / crate::polycore::rat(n as i64);
    let t = m.shift(&b);
    (1..n).all(|k| num_traits::Zero::is_zero(&t.coeff(k)))
}

/// Diagram for any polynomial with real critical points that is Morse or a
/// pure power.
pub fn diagram_for(p: &RatPoly, side: Side) -> Result<(Dynkin0, CriticalProfile)> {
    let prof = critical_values_degree(p)?;
    let n = p.degree().unwrap();
    if prof.real_point_count() != n - 1 {
        return Err(Error::NonRealCriticalPoints(n - 1 - prof.real_point_count()));
    }
    if is_pure_power(p) {
        return Ok((canonical_monomial_diagram(p.degree().unwrap(), side)?, prof));
    }
    Ok((build_chain_diagram(&prof, side)?, prof))
}

/// Pairing of two distinct 0-cycles of one chain: -1 for neighbours, else 0.
pub fn intersection0(diag: &Dynkin0, j: usize, jp: usize) -> Result<i64> {
    let a = diag.position(j)?;
    let b = diag.position(jp)?;
    Ok(if a.abs_diff(b) == 1 { -1 } else { 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizontalSymmetry {
    pub r: usize,
    /// Chain positions j (1-based) with gcd(j, d) = r.
    pub centers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryInfo {
    /// Every r > 1 for which the g-chain is symmetric about all its centers.
    pub horizontal: Vec<HorizontalSymmetry>,
    /// Rows of the join grid carrying the vertical symmetry (row 2 for e = 4).
    pub vertical_rows: Vec<usize>,
}

impl SymmetryInfo {
    pub fn has_horizontal(&self) -> bool {
        !self.horizontal.is_empty()
    }

    /// Whether the column (1-based chain position) is a multiple of some
    /// symmetric r.
    pub fn column_is_symmetric(&self, col: usize) -> bool {
        self.horizontal.iter().any(|h| col.is_multiple_of(h.r))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    num_integer::Integer::gcd(&a, &b)
}

pub fn detect_symmetry(diag_g: &Dynkin0, e: usize) -> Result<SymmetryInfo> {
    if diag_g.side != Side::G {
        return Err(Error::InvalidDiagram("symmetry detection expects a g-side diagram".into()));
    }
    let d = diag_g.degree();
    let vals = diag_g.effective_values();
    let c = |j: usize| &vals[j - 1];
    let mut horizontal = Vec::new();
    for r in 2..d {
        if !d.is_multiple_of(r) {
            continue;
        }
        let centers: Vec<usize> = (1..d).filter(|&j| gcd(j, d) == r).collect();
        if centers.iter().all(|&j| (1..r).all(|k| c(j - k) == c(j + k))) {
            horizontal.push(HorizontalSymmetry { r, centers });
        }
    }
    Ok(SymmetryInfo { horizontal, vertical_rows: if e == 4 { vec![2] } else { vec![] } })
}
