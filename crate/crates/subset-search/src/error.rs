use std::fmt;

use thiserror::Error;

use crate::element::ElementId;

/// Location-tagged failure while reading one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Structural problems found by `validate`, one entry per violated rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<String>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is not part of the universe")]
    ForeignElement(ElementId),
    #[error("{0} has no feasible-set/cost/threshold form")]
    NotAnLop(String),
    #[error("invalid instance: {0}")]
    Invalid(Diagnostics),
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("integer overflow while constructing {0}")]
    ConstructionOverflow(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget of {0} candidates exceeded")]
    BudgetExceeded(u64),
    #[error("regret is undefined because the base instance has no solution")]
    UndefinedRegret,
    #[error("{vars} variables exceed the evaluation cap of {cap}")]
    CapExceeded { vars: usize, cap: usize },
    #[error("quantifier prefix mismatch: expected {0}")]
    PrefixMismatch(String),
    #[error("variant family mismatch: expected {expected}, found {found}")]
    FamilyMismatch { expected: String, found: String },
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
