use std::fmt;

use thiserror::Error;

/// Failures of exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("limit at t = 0 does not exist (order {order})")]
    NoLimit { order: i64 },
    #[error("order at zero of the zero function is infinite")]
    ZeroOrder,
    #[error("pole at the specialization point")]
    Pole,
}

/// Position in a text input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            span: Span { line, col },
            message: message.into(),
        }
    }

    /// Shift a single-line error onto `line` of a larger document, starting at `col_offset`.
    pub fn at_line(mut self, line: usize, col_offset: usize) -> Self {
        self.span.line = line;
        self.span.col += col_offset;
        self
    }
}

/// Top-level error for algebra, certificate and catalog operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown algebra set `{0}`")]
    UnknownSet(String),
    #[error("limit does not exist: structure constants with a pole at t = 0: {0:?}")]
    NoLimit(Vec<(usize, usize, usize)>),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("invalid parameter binding: {0}")]
    Binding(String),
    #[error("trace invariant is degenerate: every sampled denominator vanished")]
    DegenerateTrace,
    #[error("degeneration order violated: {0}")]
    Consistency(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
