use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node id {id} out of range 1..={n}")]
    InvalidNode { id: usize, n: usize },
    #[error("self-loop at node {0}")]
    InvalidEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({i}, {j}) has non-positive or non-finite weight {w}")]
    InvalidWeight { i: usize, j: usize, w: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("graph is already augmented")]
    RepeatedAugmentation,
    #[error("flow is not defined on the augmented graph")]
    NotAugmented,
    #[error("dual point violates the edge capacities")]
    DualInfeasible,
    #[error("node {0} has no neighbours")]
    IsolatedNode(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("eigen-iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("invalid weight override for edge index {0}")]
    InvalidOverride(usize),
    #[error("cannot sample {count} seeds from a block of {available} nodes")]
    CountTooLarge { count: usize, available: usize },
    #[error("seed node {0} lies outside the cluster")]
    SeedsOutsideCluster(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
