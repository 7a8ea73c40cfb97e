use std::fmt;

use thiserror::Error;

use crate::sgraph::Arc;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is not a vertex of a graph on 1..={order}")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("duplicate arc {0}")]
    DuplicateArc(Arc),

    #[error("duplicate arc {0} -> {1}")]
    DuplicatePair(usize, usize),

    #[error("arc {0} is not in the graph")]
    ArcAbsent(Arc),

    #[error("vertex {0} is not in the graph")]
    VertexAbsent(usize),

    #[error("state has length {actual}, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("more than {cap} cycles; raise the cycle cap to continue")]
    CycleCapExceeded { cap: usize },

    #[error("{what} is {actual}, above the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("cycle is not positive")]
    NotPositiveCycle,

    #[error("arc {0} does not belong to the cycle")]
    ArcNotInCycle(Arc),

    #[error("arc {0} is not an arc of the network's interaction graph")]
    NotAnInteraction(Arc),

    #[error("network does not have the given graph as interaction graph")]
    GraphMismatch,

    #[error("minimum distance must be at least 1")]
    InvalidDistance,

    #[error("local function of vertex {vertex}: {reason}")]
    InvalidLocalFunction { vertex: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Parse failure with a 1-based position in the input text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    MalformedHeader(String),
    MalformedLine(String),
    BadVertex(String),
    BadSign(String),
    DuplicateArc,
    DuplicateVertex(usize),
    MissingVertex(usize),
    BadTableLength { expected: usize, actual: usize },
    BadTableDigit(char),
    Invalid(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing header line"),
            ParseErrorKind::MalformedHeader(s) => write!(f, "malformed header `{s}`"),
            ParseErrorKind::MalformedLine(s) => write!(f, "malformed line `{s}`"),
            ParseErrorKind::BadVertex(s) => write!(f, "bad vertex id `{s}`"),
            ParseErrorKind::BadSign(s) => write!(f, "bad sign `{s}` (expected + or -)"),
            ParseErrorKind::DuplicateArc => write!(f, "duplicate arc"),
            ParseErrorKind::DuplicateVertex(v) => write!(f, "vertex {v} defined twice"),
            ParseErrorKind::MissingVertex(v) => write!(f, "no local function for vertex {v}"),
            ParseErrorKind::BadTableLength { expected, actual } => {
                write!(f, "truth table has length {actual}, expected {expected}")
            }
            ParseErrorKind::BadTableDigit(c) => write!(f, "truth table digit `{c}` is not 0 or 1"),
            ParseErrorKind::Invalid(s) => write!(f, "{s}"),
        }
    }
}
