use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed input `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid target family: {0}")]
    InvalidFamily(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("enumeration would exceed the cap of {cap} targets")]
    BudgetExceeded { cap: usize },
    #[error("LP too large: {size} variables+constraints exceeds cap {cap}")]
    LpTooLarge { size: usize, cap: usize },
    #[error("LP is unbounded")]
    Unbounded,
    #[error("LP exceeded the iteration cap of {0}")]
    IterationCap(usize),
    #[error("LP hit its time limit after {0} pivots")]
    LpTimeout(usize),
    #[error("threshold must lie in (0, 1], got {0}")]
    BadThreshold(String),
    #[error("mismatched instance: {0}")]
    MismatchedInstance(String),
    #[error("insufficient density: {0}")]
    InsufficientDensity(String),
    #[error("zero-weight subgraph contains a target: {0:?}")]
    NotTargetFree(Vec<usize>),
    #[error("invalid sweep config: {0}")]
    ConfigInvalid(String),
    #[error("cannot write output: {0}")]
    OutputUnwritable(#[source] std::io::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("report rejected: {0}")]
    ReportRejected(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
