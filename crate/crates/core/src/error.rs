use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {{{0},{1}}} already present")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge universe full ({0} edges)")]
    UniverseFull(usize),
    #[error("invalid edge id {id} (graph has {m} edges)")]
    InvalidEdgeId { id: usize, m: usize },
    #[error("vertex {v} out of range 1..={n}")]
    BadVertex { v: usize, n: usize },
    #[error("vertex weight must be at least 1 (vertex {0})")]
    BadWeight(usize),
    #[error("solution length {len} does not match edge count {m}")]
    LengthMismatch { len: usize, m: usize },
    #[error("instance too large for the exhaustive oracle: {0}")]
    TooLarge(String),
    #[error("invalid change: {0}")]
    InvalidChange(String),
    #[error("dual solution is infeasible")]
    Infeasible,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
