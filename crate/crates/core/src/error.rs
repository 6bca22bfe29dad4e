use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library.
///
/// Parse failures are kept separate from domain violations so that callers
/// (notably the CLI) can distinguish malformed input from mathematically
/// invalid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has determinant {0}, expected +1")]
    NonUnitDeterminant(BigInt),

    #[error("matrix is not hyperbolic (|trace| = {0} < 3)")]
    NotHyperbolic(BigInt),

    #[error("discriminant {0} is not a positive non-square congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(BigInt),

    #[error("form {0},{1},{2} is not primitive")]
    ImprimitiveForm(BigInt, BigInt, BigInt),

    #[error("forms have different discriminants ({0} vs {1})")]
    DiscriminantMismatch(BigInt, BigInt),

    #[error("({x}, {y}) does not solve X^2 - {delta} Y^2 = 4")]
    NotPellSolution { x: BigInt, y: BigInt, delta: BigInt },

    #[error("block word must contain at least one block")]
    EmptyWord,

    #[error("block word exponents must be >= 1")]
    ZeroExponent,

    #[error("cyclic word uses a single symbol; both 0 and 1 are required")]
    ConstantWord,

    #[error("cyclic word is periodic; an aperiodic word is required")]
    PeriodicWord,

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
