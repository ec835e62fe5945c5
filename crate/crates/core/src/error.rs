use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("graph is not irreducible")]
    NotIrreducible,
    #[error("graph is not deterministic")]
    NotDeterministic,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no approximate eigenvector with entries at most {0}")]
    NotFoundWithin(u64),
    #[error("infeasible vector: {0}")]
    InfeasibleVector(String),
    #[error("state {state} cannot be split consistently with the vector")]
    SplitInfeasible { state: String },
    #[error("state {state} has too little weight in class {class}")]
    InsufficientWeight { state: String, class: u8 },
    #[error("tag arity mismatch: n0={n0}, n1={n1} is not a pair of equal powers of two")]
    ArityMismatch { n0: usize, n1: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown tag {0}")]
    UnknownTag(String),
    #[error("invalid state {0}")]
    InvalidState(String),
    #[error("word is not generated from the start state (position {0})")]
    NotDecodable(usize),
}
