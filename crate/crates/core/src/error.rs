use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Grammar violation.
    Syntax(String),
    /// A label that does not occur exactly once as `O` and once as `U`.
    UnpairedLabel(u64),
    /// The two occurrences of a label carry different signs.
    SignMismatch(u64),
}

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, column: usize) -> Self {
        Self { kind, line: 1, column }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnpairedLabel(l) => {
                write!(f, "label {l} must occur exactly once as O and once as U")
            }
            ParseErrorKind::SignMismatch(l) => {
                write!(f, "label {l} occurs with two different signs")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("diagram has no classical crossings")]
    EmptyDiagram,

    #[error("state space too large: {crossings} crossings exceeds the cap of {cap}")]
    StateSpaceTooLarge { crossings: usize, cap: usize },

    #[error(
        "anticommutativity violation: d∘d has {nonzero} nonzero entries out of bidegree ({i}, {j}); \
         the local convention table is broken"
    )]
    AnticommutativityViolation { i: i32, j: i32, nonzero: usize },

    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),

    #[error("local orientation is undefined on a 1-1 edge")]
    Inapplicable,
}
