use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex set of size {size} is outside 2 <= |S| < {n}")]
    InvalidSubsetSize { size: usize, n: usize },
    #[error("vertex {0} is not a member of the set")]
    NotMember(usize),
    #[error("vertex set is bound to {set_n} vertices but the graph has {graph_n}")]
    UniverseMismatch { set_n: usize, graph_n: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("instance with {n} vertices exceeds the enumeration cap {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("graph admits no proportionally dense subgraph")]
    NoPds,
    #[error("graph has {n} vertices, at least {min} required")]
    GraphTooSmall { n: usize, min: usize },
    #[error("initial set has {size} vertices, expected {expected}")]
    InvalidInit { size: usize, expected: usize },
    #[error("source graph is a star")]
    IsStar,
    #[error("parameter k = {k} outside 1 <= k < {n} - 1")]
    KOutOfRange { k: usize, n: usize },
    #[error("vertex set is not independent (edge {0}-{1})")]
    NotIndependent(usize, usize),
    #[error("vertex set does not induce a proportionally dense subgraph")]
    NotAPds,
    #[error("set of size {size} is below the threshold {threshold}")]
    SizeBelowThreshold { size: usize, threshold: usize },
    #[error("graph has a good shift")]
    HasGoodShift,
    #[error("L/R classification is neither of type RLRL nor RRLL")]
    UnclassifiedType,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("unknown benchmark suite `{0}`")]
    UnknownSuite(String),
}
