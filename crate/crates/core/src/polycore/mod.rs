//! Exact polynomial arithmetic over Q: roots, resultants, critical values.

pub mod critical;
pub mod poly;
pub mod quartic;
pub mod resultant;
pub mod roots;

pub use critical::{critical_values_degree, CriticalProfile};
pub use poly::{parse_rat, rat, ratio, Rat, RatPoly};
pub use quartic::{depress_quartic, ideal_membership_d4, DepressedQuartic, IdealMembership};
pub use resultant::{discriminant, discriminant_curve, resultant, sylvester_resultant};
pub use roots::{isolate_real_roots, IsolatedRoot, Sturm};

/// Derivative of f.
pub fn derivative(f: &RatPoly) -> RatPoly {
    f.derivative()
}
