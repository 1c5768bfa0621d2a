//! Real root isolation with Sturm sequences and exact comparison of real
//! algebraic numbers given by isolating intervals.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::poly::{rat, ratio, sign, Rat, RatPoly};
use crate::error::{Error, Result};

/// A positive multiple of a rational polynomial with coprime integer
/// coefficients; same signs everywhere, cheaper to evaluate.
#[derive(Clone, Debug)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn from_rat(p: &RatPoly) -> Self {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut c: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            c.iter_mut().for_each(|x| *x /= &g);
        }
        IntPoly(c)
    }

    /// Sign at x = n/d: the sign of d^deg p(n/d), by Horner over Z.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let (n, d) = (x.numer(), x.denom());
        let mut it = self.0.iter().rev();
        let Some(lead) = it.next() else { return 0 };
        let mut acc = lead.clone();
        let mut dpow = d.clone();
        for c in it {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

pub struct Sturm {
    seq: Vec<RatPoly>,
    ints: Vec<IntPoly>,
}

impl Sturm {
    /// Sturm chain of a squarefree polynomial. Members are rescaled by
    /// positive constants, which keeps the sign variations.
    pub fn new(p: &RatPoly) -> Self {
        let norm = |q: &RatPoly| {
            let i = IntPoly::from_rat(q);
            (RatPoly::new(i.0.iter().map(|c| Rat::from_integer(c.clone())).collect()), i)
        };
        let (a, ia) = norm(p);
        let (b, ib) = norm(&p.derivative());
        let mut seq = vec![a, b];
        let mut ints = vec![ia, ib];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                ints.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            let (q, iq) = norm(&-&r);
            seq.push(q);
            ints.push(iq);
        }
        Sturm { seq, ints }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.ints.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = sign(p.lead().unwrap());
            if positive || p.degree().unwrap() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct roots in the half-open interval (lo, hi].
    pub fn count_in(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Bound B with every real root strictly inside (-B, B).
pub fn cauchy_bound(p: &RatPoly) -> Rat {
    let lc = p.lead().unwrap().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rat::zero);
    m + rat(1)
}

/// A real root of a squarefree polynomial. Either `lo == hi` is the exact
/// root, or `lo < hi`, neither endpoint is a root, and the open interval
/// holds exactly one root.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    poly: Arc<RatPoly>,
    ipoly: Arc<IntPoly>,
    lo: Rat,
    hi: Rat,
}

impl IsolatedRoot {
    pub fn exact(value: Rat) -> Self {
        let poly = RatPoly::new(vec![-value.clone(), Rat::one()]);
        IsolatedRoot { ipoly: Arc::new(IntPoly::from_rat(&poly)), poly: Arc::new(poly), lo: value.clone(), hi: value }
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Halve the interval (or land on the root exactly).
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2);
        let s = self.ipoly.sign_at(&mid);
        if s == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if s == self.ipoly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rat) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    pub fn approx(&self) -> f64 {
        let mut r = self.clone();
        let tol = ratio(1, 1 << 40) * (self.lo.abs() + rat(1));
        r.refine_to(&tol);
        ((&r.lo + &r.hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_value(&self, other: &IsolatedRoot) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        let g = RatPoly::gcd(&a.poly, &b.poly);
        let common = g.degree().unwrap_or(0) > 0;
        let sturm = common.then(|| Sturm::new(&g));
        loop {
            if a.is_exact() && b.is_exact() {
                return a.lo.cmp(&b.lo);
            }
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let Some(st) = &sturm {
                let lo = (&a.lo).max(&b.lo).clone();
                let hi = (&a.hi).min(&b.hi).clone();
                let hit = if lo == hi { g.sign_at(&lo) == 0 } else { g.sign_at(&lo) == 0 || st.count_in(&lo, &hi) > 0 };
                if hit {
                    return Ordering::Equal;
                }
            }
            if a.width() >= b.width() {
                a.bisect();
            } else {
                b.bisect();
            }
        }
    }

    /// Whether the rational `x` lies in the current isolating interval.
    pub fn interval_contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl PartialEq for IsolatedRoot {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl Serialize for IsolatedRoot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IsolatedRoot", 4)?;
        st.serialize_field("poly", &*self.poly)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("approx", &self.approx())?;
        st.end()
    }
}

/// Isolate the distinct real roots of `p`, in increasing order.
pub fn isolate_real_roots(p: &RatPoly) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = Arc::new(p.squarefree_part());
    if q.degree().unwrap() == 0 {
        return Ok(Vec::new());
    }
    let sturm = Sturm::new(&q);
    let iq = Arc::new(IntPoly::from_rat(&q));
    let b = cauchy_bound(&q);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b.clone(), sturm.count_in(&-b.clone(), &b))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(IsolatedRoot { poly: q.clone(), ipoly: iq.clone(), lo, hi }),
            _ => {
                let mid = split_point(&iq, &lo, &hi);
                let left = sturm.count_in(&lo, &mid);
                // right half pushed first so the left half is popped first
                stack.push((mid.clone(), hi, n - left));
                stack.push((lo, mid, left));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// A point strictly between lo and hi that is not a root of q.
fn split_point(q: &IntPoly, lo: &Rat, hi: &Rat) -> Rat {
    let w = hi - lo;
    for k in 2i64.. {
        for num in [k / 2, (k + 1) / 2] {
            let t = lo + &w * ratio(num.max(1), k);
            if &t > lo && &t < hi && q.sign_at(&t) != 0 {
                return t;
            }
        }
    }
    unreachable!()
}

/// Rational enclosure of p over [lo, hi] by interval Horner evaluation.
pub fn eval_interval(p: &RatPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    #[test]
    fn sturm_counts_real_roots() {
        // x^3 - 3x has roots -sqrt3, 0, sqrt3
        let st = Sturm::new(&p(&[0, -3, 0, 1]));
        assert_eq!(st.count_real(), 3);
        assert_eq!(st.count_in(&rat(-1), &rat(2)), 2);
        assert_eq!(Sturm::new(&p(&[1, 0, 1])).count_real(), 0);
    }

    #[test]
    fn isolates_sorted_disjoint() {
        let q = p(&[0, -3, 0, 1]);
        let r = isolate_real_roots(&q).unwrap();
        assert_eq!(r.len(), 3);
        let approx: Vec<f64> = r.iter().map(|x| x.approx()).collect();
        let s3 = 3f64.sqrt();
        for (a, e) in approx.iter().zip([-s3, 0.0, s3]) {
            assert!((a - e).abs() < 1e-9, "{a} vs {e}");
        }
        for w in r.windows(2) {
            assert!(w[0].hi() <= w[1].lo());
        }
    }

    #[test]
    fn zero_poly_rejected_and_repeated_roots_merged() {
        assert_eq!(isolate_real_roots(&RatPoly::zero()).unwrap_err(), Error::ZeroPolynomial);
        let q = RatPoly::from_roots(&[rat(1), rat(1), rat(-2)]);
        assert_eq!(isolate_real_roots(&q).unwrap().len(), 2);
        assert!(isolate_real_roots(&rat_const(5)).unwrap().is_empty());
    }

    fn rat_const(c: i64) -> RatPoly {
        RatPoly::constant(rat(c))
    }

    #[test]
    fn compares_algebraic_numbers() {
        // sqrt2 from x^2-2 and from x^4-4x^2+4 ... and against 1.5 and sqrt3
        let s2 = isolate_real_roots(&p(&[-2, 0, 1])).unwrap()[1].clone();
        let s2b = isolate_real_roots(&p(&[-2, 0, 1, 0, 0, 1, 0])).unwrap();
        let s2c = isolate_real_roots(&(&p(&[-2, 0, 1]) * &p(&[-3, 0, 1]))).unwrap();
        let s3 = s2c[3].clone();
        assert_eq!(s2.cmp_value(&s2c[2]), Ordering::Equal);
        assert_eq!(s2.cmp_value(&s3), Ordering::Less);
        assert_eq!(s3.cmp_value(&IsolatedRoot::exact(ratio(3, 2))), Ordering::Greater);
        assert_eq!(s2.cmp_value(&IsolatedRoot::exact(ratio(3, 2))), Ordering::Less);
        for r in &s2b {
            assert_ne!(r.cmp_value(&s2), Ordering::Equal);
        }
    }

    #[test]
    fn interval_enclosure_contains_values() {
        let q = p(&[1, -3, 0, 2]);
        let (lo, hi) = eval_interval(&q, &rat(-1), &ratio(1, 2));
        for k in 0..=30 {
            let x = rat(-1) + ratio(k, 20);
            let v = q.eval(&x);
            assert!(lo <= v && v <= hi);
        }
    }
}
