//! Vanishing cycles and Picard-Lefschetz monodromy for polynomials of the
//! form f(x, y) = h(y) + g(x), computed exactly over the rationals.

pub mod classify;
pub mod dynkin;
pub mod error;
pub mod joincycles;
pub mod linalg;
pub mod monodromy;
pub mod polycore;
pub mod verify;

pub use error::{Error, Result};
