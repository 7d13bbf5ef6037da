//! Polynomials, root-factored rational functions, the `B_n` action on them and
//! the twisted operators `Σ c · w · 1_i` realising algebra elements.

mod poly;
mod ratfunc;
mod twisted;

pub use poly::{Mono, PolyDisplay, PolyN};
pub use ratfunc::{factor_roots, RatFunc, Root};
pub use twisted::{OpContext, OpRecord, PolyVec, TwistedOp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmashError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error("denominator is not a product of root forms")]
    UnsupportedDenominator,
    #[error("operators act on different orbits")]
    OrbitMismatch,
    #[error("operator produced a non-polynomial image")]
    NonPolynomialImage,
}
