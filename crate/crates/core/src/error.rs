use std::fmt;

use thiserror::Error;

/// Syntax error in a word, parameter string or input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("invalid generator name {0:?}")]
    InvalidGenerator(String),

    #[error("{op} needs at least {expected} arguments, got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("no assignment for generator {0}")]
    MissingAssignment(String),

    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("invalid class-2 parameters: {0}")]
    InvalidParams(String),

    #[error("elements belong to groups with different parameters")]
    ParamsMismatch,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operation needs rank {expected}, got rank {got}")]
    WrongRank { expected: usize, got: usize },

    #[error("group is infinite: modulus 0 at {0}")]
    InfiniteGroup(String),

    #[error("table is not square or has an out-of-range entry at row {row}, column {col}")]
    MalformedTable { row: usize, col: usize },

    #[error("identity axiom fails: index 0 is not a two-sided identity (at element {0})")]
    IdentityAxiom(usize),

    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),

    #[error("associativity fails for ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not normal: conjugate of {element} by {by} leaves the subgroup")]
    NotNormal { element: usize, by: usize },

    #[error("homomorphisms do not share source and target")]
    HomMismatch,

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("group has no presentation or generators: {0}")]
    MissingPresentation(String),

    #[error("exhaustive check refused: {0}")]
    Refused(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certificate and brute force disagree: {0}")]
    Disagreement(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    File { path: String, source: ParseError },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
