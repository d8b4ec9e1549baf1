use std::fmt;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, got: usize },
    SingularMatrix,
    NotRealValued,
    ZeroPolynomial,
    NonzeroConstantTerm,
    BidegreeTooLarge { got: (u32, u32) },
    RankTooSmall { rank: usize },
    UnsupportedDivisorForm,
    JetUndefined(String),
    QVanishesAtBasePoint,
    TruncationTooLow { needed: u32, got: u32 },
    EpsilonSearchFailed,
    PivotParity,
    Parse { pos: usize, msg: String },
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::SingularMatrix => write!(f, "singular matrix rejected"),
            Error::NotRealValued => write!(f, "input is not real-valued on the diagonal"),
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not allowed here"),
            Error::NonzeroConstantTerm => write!(f, "polynomial must vanish at the base point"),
            Error::BidegreeTooLarge { got } => {
                write!(f, "bidegree ({}, {}) exceeds (1, 1)", got.0, got.1)
            }
            Error::RankTooSmall { rank } => {
                write!(f, "rank {rank} <= 1; use the trivial branch")
            }
            Error::UnsupportedDivisorForm => {
                write!(f, "divisor must have a nonzero linear w coefficient")
            }
            Error::JetUndefined(what) => write!(f, "jet undefined: {what}"),
            Error::QVanishesAtBasePoint => {
                write!(f, "Q vanishes at the base point and cannot be arranged away")
            }
            Error::TruncationTooLow { needed, got } => {
                write!(f, "jet truncated to {got} but degree {needed} required")
            }
            Error::EpsilonSearchFailed => {
                write!(f, "no admissible epsilon found in the dyadic search")
            }
            Error::PivotParity => write!(f, "pivot index violates |alpha| <= t or parity"),
            Error::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
