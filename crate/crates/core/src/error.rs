use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("support contains the exponent 0")]
    ZeroInSupport,
    #[error("support is too short: need at least 2 points spanning an interval of length >= 3")]
    TooShort,
    #[error("support does not affinely generate Z (gcd of differences is {gcd})")]
    NotGenerating { gcd: i64 },
    #[error("support lists exponent {0} more than once")]
    DuplicatePoint(i64),
    #[error("covector has {got} entries but the support has {expected}")]
    CovectorLength { expected: usize, got: usize },
    #[error("covector entry at exponent {exponent} is negative")]
    NegativeEntry { exponent: i64 },
    #[error("exponent {point} lies on the upper hull edge [{left}, {right}] without being a vertex")]
    DegenerateHull { point: i64, left: i64, right: i64 },
    #[error("pairs ({}, {}) and ({}, {}) have equal slopes", .first.0, .first.1, .second.0, .second.1)]
    SlopeDegenerate { first: (i64, i64), second: (i64, i64) },
    #[error("roots r_{first} and r_{second} have equal tropical values")]
    RootValueDegenerate { first: usize, second: usize },
    #[error("covector is not integer-valued")]
    NonIntegerCovector,
    #[error("support is not contained in the positive integers")]
    NotPositiveSupport,
    #[error("covector is not tropically Morse: {0}")]
    NotMorse(Box<Error>),
    #[error("support has {size} points, above the enumeration cap of {cap}")]
    SupportTooLarge { size: usize, cap: usize },
    #[error("vertex {index} violates the hyperplane constants (d1={d1}, d2={d2})")]
    HyperplaneViolation { index: usize, d1: i64, d2: i64 },
    #[error("axes ({0}, {1}) are not two distinct coordinate indices")]
    BadAxes(usize, usize),
    #[error("combinatorial type is malformed: {0}")]
    InvalidType(String),
    #[error("could not place a generic witness inside the cone of {0}")]
    WitnessFailure(String),
    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn not_morse(err: Error) -> Error {
        match err {
            e @ Error::NotMorse(_) => e,
            e => Error::NotMorse(Box::new(e)),
        }
    }
}
