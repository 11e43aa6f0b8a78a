use std::fmt;

use thiserror::Error;

/// Largest vertex count accepted by the exact (rational) engines.
pub const EXACT_CAP: usize = 30;

/// Where in a text input an error was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location(pub Option<usize>);

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(line) => write!(f, " (line {line})"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error{at}: {msg}")]
    Parse { at: Location, msg: String },

    #[error("self-loop at vertex {vertex}{at}")]
    SelfLoop { vertex: String, at: Location },

    #[error("duplicate edge {u}-{v}{at}")]
    DuplicateEdge { u: String, v: String, at: Location },

    #[error("graph is disconnected: vertex {vertex} is unreachable from vertex {root}")]
    Disconnected { vertex: String, root: String },

    #[error("graph must have at least 2 vertices, got {n}")]
    TooFewVertices { n: usize },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label '{0}'")]
    UnknownLabel(String),

    #[error("vertex set width {got} does not match graph order {n}")]
    WidthMismatch { got: usize, n: usize },

    #[error("graph of order {n} exceeds the exact-engine cap of {cap} vertices")]
    CapExceeded { n: usize, cap: usize },

    #[error("support search exceeded the state budget of {budget} states")]
    StateBudgetExceeded { budget: usize },

    #[error("the initial black set is empty")]
    EmptySeed,

    #[error("j = {j} is outside 1..={max}")]
    JOutOfRange { j: usize, max: usize },

    #[error("layer {k} has not been computed (have {available})")]
    LayerNotComputed { k: usize, available: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::StateBudgetExceeded { .. } => 3,
            Error::Internal(_) => 1,
            _ => 2,
        }
    }

    /// Short machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            3 => "cap",
            1 => "internal",
            _ => "config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
