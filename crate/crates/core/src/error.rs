use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("segment has zero length")]
    DegenerateSegment,
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

/// Failures of straight-line drawings and their checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("drawing is not a thrackle")]
    NotAThrackle,
    #[error("drawing has no vertices")]
    EmptyDrawing,
    #[error("point set of size {0} exceeds the brute-force limit of {1}")]
    TooLarge(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Failures of combinatorial drawings and planarization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("inconsistent crossing data: {0}")]
    Inconsistent(String),
    #[error("rotation system is not planar (Euler check failed: {nodes} nodes, {segments} segments, {faces} faces)")]
    NonPlanar {
        nodes: usize,
        segments: usize,
        faces: usize,
    },
    #[error("edge skeleton is disconnected")]
    Disconnected,
    #[error("bad face anchor: {0}")]
    BadAnchor(String),
    #[error("three or more edges pass through one point")]
    ConcurrentCrossing,
    #[error("degenerate contact between edges: {0}")]
    DegenerateTouch(String),
    #[error("drawing has no vertices")]
    EmptyDrawing,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("drawing is not a thrackle")]
    NotAThrackle,
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("Tutte system is not uniquely solvable")]
    SingularSystem,
    #[error("bad render options: {0}")]
    BadOptions(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}
