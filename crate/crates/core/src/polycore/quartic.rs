use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{rat, Rat, RatPoly};
use crate::error::{Error, Result};

/// A real quartic brought to x^4 + r2 x^2 + r1 x (+ const) by scaling to
/// monic and translating away the cubic term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepressedQuartic {
    pub lead: Rat,
    pub shift: Rat,
    pub r2: Rat,
    pub r1: Rat,
    pub r0: Rat,
}

pub fn depress_quartic(h: &RatPoly) -> Result<DepressedQuartic> {
    let d = h.degree().ok_or(Error::ZeroPolynomial)?;
    if d != 4 {
        return Err(Error::NotQuartic(d));
    }
    let lead = h.lead().unwrap().clone();
    let m = h.monic();
    let shift = -m.coeff(3) / rat(4);
    let t = m.shift(&shift);
    Ok(DepressedQuartic { lead, shift, r2: t.coeff(2), r1: t.coeff(1), r0: t.coeff(0) })
}

impl DepressedQuartic {
    /// 27 r1^2 + 8 r2^3; the discriminant of the derivative is -16 times this.
    pub fn h_factor(&self) -> Rat {
        rat(27) * &self.r1 * &self.r1 + rat(8) * &self.r2 * &self.r2 * &self.r2
    }
}

/// Membership of a quartic in the two ideals that govern the orbit classes:
/// `fourth_power` (a pure fourth power up to affine change) and `fold_or_repeated`
/// (decomposable, or with a repeated critical point).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealMembership {
    pub fourth_power: bool,
    pub fold_or_repeated: bool,
    pub decomposable: bool,
    pub r2: String,
    pub r1: String,
    pub h_factor: String,
}

pub fn ideal_membership_d4(h: &RatPoly) -> Result<IdealMembership> {
    let q = depress_quartic(h)?;
    let hf = q.h_factor();
    Ok(IdealMembership {
        fourth_power: q.r1.is_zero() && q.r2.is_zero(),
        fold_or_repeated: q.r1.is_zero() || hf.is_zero(),
        decomposable: q.r1.is_zero(),
        r2: q.r2.to_string(),
        r1: q.r1.to_string(),
        h_factor: hf.to_string(),
    })
}
