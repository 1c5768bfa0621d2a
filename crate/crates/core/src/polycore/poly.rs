use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from `"p"`, `"p/q"` or a plain decimal like `"-1.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(&digits).map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    Rat::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The coefficient vector never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    /// Build from coefficient strings, lowest degree first.
    pub fn parse_coeffs<S: AsRef<str>>(c: &[S]) -> Result<Self> {
        c.iter().map(|s| parse_rat(s.as_ref())).collect::<Result<Vec<_>>>().map(Self::new)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| &acc * &Self::new(vec![-r.clone(), Rat::one()]))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                let t = &f * c;
                r[k - dd + i] -= t;
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics in debug builds when the division is not exact.
    pub fn div_exact(&self, d: &RatPoly) -> RatPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.div_exact(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        Self::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime factors with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = Self::gcd(&b, &d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// self(other(x)).
    pub fn compose(&self, other: &RatPoly) -> RatPoly {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// self(x + c).
    pub fn shift(&self, c: &Rat) -> RatPoly {
        self.compose(&Self::new(vec![c.clone(), Rat::one()]))
    }

    /// self(-x).
    pub fn reflect(&self) -> RatPoly {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".into()];
        }
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, o: RatPoly) -> RatPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() || k == 0 {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            S(String),
            I(i64),
        }
        let raw = Vec::<Coeff>::deserialize(d)?;
        let strs: Vec<String> = raw
            .into_iter()
            .map(|c| match c {
                Coeff::S(s) => s,
                Coeff::I(i) => i.to_string(),
            })
            .collect();
        RatPoly::parse_coeffs(&strs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    #[test]
    fn derivative_of_quartic() {
        // -x^4 + 16x^2 + 8x
        let g = p(&[0, 8, 16, 0, -1]);
        assert_eq!(g.derivative(), p(&[8, 32, 0, -4]));
        assert_eq!(p(&[5]).derivative(), RatPoly::zero());
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[3, -1, 0, 2, 7]);
        let b = p(&[1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = RatPoly::from_roots(&[rat(1), rat(1), rat(2), ratio(1, 3)]);
        let b = RatPoly::from_roots(&[rat(1), rat(5)]);
        assert_eq!(RatPoly::gcd(&a, &b), RatPoly::from_roots(&[rat(1)]));
        assert_eq!(a.squarefree_part(), RatPoly::from_roots(&[rat(1), rat(2), ratio(1, 3)]));
        let dec = a.scale(&rat(-4)).squarefree_decomposition();
        assert_eq!(dec, vec![(RatPoly::from_roots(&[rat(2), ratio(1, 3)]), 1), (RatPoly::from_roots(&[rat(1)]), 2)]);
    }

    #[test]
    fn shift_and_reflect() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.shift(&rat(1)), p(&[6, 8, 3]));
        assert_eq!(a.reflect(), p(&[1, -2, 3]));
    }

    #[test]
    fn parse_and_display() {
        let a = RatPoly::parse_coeffs(&["0", "8", "16", "0", "-1"]).unwrap();
        assert_eq!(a.to_string(), "-x^4 + 16x^2 + 8x");
        let b = RatPoly::parse_coeffs(&["1/2", "-1.25"]).unwrap();
        assert_eq!(b.coeffs(), &[ratio(1, 2), ratio(-5, 4)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["0","8","16","0","-1"]"#);
        let back: RatPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(RatPoly::parse_coeffs(&["x"]).is_err());
    }
}
