use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} has been removed")]
    DeadVertex(usize),
    #[error("self-edge requested on vertex {0}")]
    SelfLoop(usize),
    #[error("fusion qubits must differ (got {0} twice)")]
    SameVertex(usize),
    #[error("invalid parity pair: {0}")]
    InvalidPair(String),
    #[error("measurement outcome contradicts a deterministic value")]
    Contradiction,
    #[error("tableau is not a pure stabilizer state (rank {rank} < {n})")]
    RankDeficient { rank: usize, n: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("graph with {0} vertices exceeds the supported size {1}")]
    Unsupported(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("network spec error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
