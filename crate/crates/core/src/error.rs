use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: no path from {0} to {1}")]
    Disconnected(usize, usize),
    #[error("the edge-cycle condition applies to graphs that are not trees")]
    Tree,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("basis of size {size} exceeds the configured cap of {cap}")]
    BasisCap { size: usize, cap: usize },
    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(u64),
    #[error("graph is not pawful: {0}")]
    NotPawful(crate::graph::PawfulViolation),
    #[error("{0}")]
    InvalidCertificate(String),
    #[error("S-structure file, line {line}: {message}")]
    SFile { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
