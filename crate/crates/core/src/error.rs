use std::fmt;

use thiserror::Error;

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: 1,
            column,
            message: message.into(),
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("torsion orders must be >= 2 and form a divisibility chain, got {0:?}")]
    InvalidTorsion(Vec<i64>),

    #[error("element has {got} coordinates but the group has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("division by 1 - Z^t with t = 0")]
    DegenerateDivisor,

    #[error("polynomial is not divisible by 1 - Z^t")]
    NotDivisible,

    #[error("the zero polynomial has no support")]
    ZeroPolynomial,

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("variable X{0} has no assigned value")]
    MissingAssignment(u32),

    #[error("variable X{var} occurs {occurrences} times; the equation is not quadratic")]
    NotQuadratic { var: u32, occurrences: usize },

    #[error("variable X{0} occurs twice with the same exponent; unorientable equations are not supported")]
    NotOrientable(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),

    #[error("instance too large for exhaustive search: {0}")]
    SizeGuard(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal witness check failed: {0}")]
    WitnessRejected(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
