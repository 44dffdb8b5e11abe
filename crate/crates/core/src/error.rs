use std::fmt;

use thiserror::Error;

/// Position of a parse failure inside a (possibly multi-line) input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no {wanted} primes congruent to 1 mod {modulus} below {ceiling}")]
    PrimeSearchExhausted {
        modulus: u64,
        wanted: usize,
        ceiling: u64,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid monomial set: {0}")]
    InvalidMonomialSet(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },

    #[error("term budget of {limit} exhausted")]
    BudgetExhausted { limit: u64 },

    #[error("integrality precondition failed: {0}")]
    Integrality(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("support of the polynomial does not match the monomial set")]
    SupportMismatch,

    #[error("prime {p} divides the denominator of coefficient {coefficient}")]
    DenominatorDivisible { p: u64, coefficient: String },

    #[error("coefficient {coefficient} vanishes modulo {p}, collapsing the support")]
    SupportCollapse { p: u64, coefficient: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location { line, column },
            message: message.into(),
        }
    }

    /// Process exit code used by the `fpt` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Integrality(_) => 4,
            Error::BudgetExhausted { .. } => 5,
            Error::Io(_) => 6,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
