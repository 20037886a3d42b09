use thiserror::Error;

/// Errors produced by graph construction and the resistance computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has non-positive resistance")]
    NonpositiveResistance { u: usize, v: usize },
    #[error("vertex {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("no edge between {u} and {v}")]
    NoSuchEdge { u: usize, v: usize },
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("terminals are not connected")]
    DisconnectedTerminals,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("eigendecomposition did not converge")]
    ConvergenceFailure,
    #[error("matrix is singular")]
    Singular,
    #[error("product factors are not all canonical paths")]
    NotAPathProduct,
    #[error("operation requires the exact backend")]
    BackendNotExact,
    #[error("random walks require unit resistances")]
    NonUnitResistance,
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
