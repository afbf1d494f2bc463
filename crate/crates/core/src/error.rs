use std::fmt;

use thiserror::Error;

/// Location of a malformed record in a text file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit {site} out of range for {n} qubits")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("two-qubit gate applied to coincident sites {0}")]
    CoincidentSites(usize),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid stabilizer: {0}")]
    InvalidStabilizer(String),

    #[error("scripted outcome {scripted} contradicts deterministic outcome {forced}")]
    ScriptContradiction { scripted: bool, forced: bool },

    #[error("outcome script exhausted after {0} outcomes")]
    ScriptExhausted(usize),

    #[error("state of {n} qubits exceeds the statevector limit of {limit}")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("simulation needs {needed} live qubits, over the budget of {limit}")]
    Budget { needed: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("signal {0} cannot be resolved")]
    UnresolvedSignal(String),

    #[error("logical X operator {0} has no Z-type representative")]
    NonZTypeLogical(usize),

    #[error("compilation failed: {0}")]
    Compile(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location { line, column },
            message: message.into(),
        }
    }

    pub fn in_file(self, path: impl Into<String>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
