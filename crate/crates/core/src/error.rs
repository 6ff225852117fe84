use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ragged input: expected rows of length {expected}, found a row of length {found}")]
    Ragged { expected: usize, found: usize },

    #[error("cannot parse {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("containment fails: {0}")]
    NotContained(String),

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    #[error("invalid Frobenius action: {0}")]
    InvalidFrobenius(String),

    #[error("Weyl group too large: {0}")]
    WeylGroupTooLarge(String),

    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),

    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("cover degree n = {n} must divide q - 1 = {q_minus_one}")]
    DegreeDoesNotDivide { n: u64, q_minus_one: u64 },

    #[error("point is not fixed by Frobenius")]
    PointNotFrobeniusFixed,

    #[error("vector is not fixed by the Weyl group and Frobenius")]
    NotInvariant,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid Lusztig parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter is not in general position")]
    NotGeneralPosition,

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("oracle scan exhausted without a solution after k = {0}")]
    ScanExhausted(u64),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Errors caused by structurally malformed input (shape, length) rather
    /// than a violated mathematical constraint.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::Ragged { .. }
                | Error::Parse(_)
                | Error::EmptyInput(_)
                | Error::DimensionMismatch { .. }
                | Error::OutOfRange(_)
        )
    }
}
