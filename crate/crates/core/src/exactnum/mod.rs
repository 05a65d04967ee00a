//! Exact arithmetic for angular-momentum algebra: half-integers, prime-factored
//! rationals and sums of signed square roots of rationals.

mod halfint;
mod prime;
mod surd;

pub use halfint::{triangle_ok, triangle_range, HalfInt};
pub use prime::{factorial_big, PrimeRational};
pub use surd::{PiScaled, SqrtRational, SurdTerm};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value does not fit in an f64")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor has more than one radicand term")]
    NonSingleTermDivisor,
    #[error("square root of a negative rational")]
    NegativeRadicand,
    #[error("value still carries (4 pi)^({0}/2)")]
    ResidualPi(i32),
}
