use std::fmt;

use thiserror::Error;

use crate::augment::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedHeader,
    MalformedLine,
    Loop,
    DuplicateEdge,
    Unsorted,
    EndpointOutOfRange { endpoint: usize, n: usize },
    EdgeCountMismatch { declared: usize, found: usize },
    TrailingWhitespace,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MalformedHeader => write!(f, "malformed header, expected \"n m\""),
            ParseErrorKind::MalformedLine => write!(f, "malformed edge line, expected \"u v\""),
            ParseErrorKind::Loop => write!(f, "loop edge"),
            ParseErrorKind::DuplicateEdge => write!(f, "duplicate edge"),
            ParseErrorKind::Unsorted => write!(f, "edge lines are not strictly sorted with u < v"),
            ParseErrorKind::EndpointOutOfRange { endpoint, n } => {
                write!(f, "endpoint {endpoint} out of range for n = {n}")
            }
            ParseErrorKind::EdgeCountMismatch { declared, found } => {
                write!(f, "header declares {declared} edges, found {found}")
            }
            ParseErrorKind::TrailingWhitespace => write!(f, "stray whitespace"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {requested} vertices requested, cap is {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("graph is not bipartite; odd closed walk {walk:?}")]
    NotBipartite { walk: Vec<usize> },

    #[error("({a}, {b}) does not dominate ({s}, {t})")]
    NotDominating { a: usize, b: usize, s: usize, t: usize },

    #[error("pattern has isolated vertices {0:?}")]
    IsolatedVertices(Vec<usize>),

    #[error("more than {cap} copies; instance too large for exact search")]
    CopyCapExceeded { cap: usize },

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("invalid augmentation: {}", format_violations(.0))]
    InvalidAugmentation(Vec<Violation>),

    #[error("sides of size {size} exceed the exact-mode limit {limit}")]
    TooLargeForExact { size: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
