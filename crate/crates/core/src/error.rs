use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("distance parameter k must be at least 1")]
    ZeroDistance,
    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("malformed graph6 size header")]
    MalformedHeader,
    #[error("graph6 encodes {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("graph6 encodes a graph with no vertices")]
    NoVertices,
    #[error("invalid graph6 byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6 body too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 body ({extra} extra bytes)")]
    TrailingData { extra: usize },
    #[error("nonzero padding bits in the final graph6 byte")]
    NonzeroPadding,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{variant}: {constraint}")]
    Invalid { variant: &'static str, constraint: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{bound} is defined only for {requirement} (got {got})")]
pub struct BoundError {
    pub bound: &'static str,
    pub requirement: &'static str,
    pub got: String,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n = {n} exceeds the internal generation cap of {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
    #[error("no graph in the enumerated class satisfies the constraints")]
    Infeasible,
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("line {line}: graph has {found} vertices, expected {expected}")]
    WrongOrder { line: usize, expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
