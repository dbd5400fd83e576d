//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("dimension vector does not match quiver vertices: {0}")]
    VertexMismatch(String),
    #[error("series quiver/bound mismatch")]
    SeriesMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a unit of the localized motive ring: {0}")]
    NonUnitDivisor(String),
    #[error("constant term of the series is not a unit")]
    NonUnitConstantTerm,
    #[error("substitution w^2 -> L applied to a polynomial with odd exponent {0}")]
    OddHalfExponent(i64),
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("quiver is not symmetric")]
    NotSymmetric,
    #[error("dimension vector must be nonzero")]
    ZeroDimVector,
    #[error("arrow count {0} exceeds the enumeration cap {1}")]
    ArrowCapExceeded(usize, usize),
    #[error("search space {0} exceeds the budget {1}")]
    BudgetExceeded(u128, u128),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("coweight is not dominant: {0}")]
    NotDominant(String),
    #[error("coweight is not balanced: {0}")]
    NotBalanced(String),
    #[error("expected a polynomial but found a denominator: {0}")]
    NonPolynomial(String),
    #[error("plethystic coefficient is not an integer Laurent polynomial in L^(1/2): {0}")]
    NonIntegerPlethysticCoefficient(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
