use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(usize, usize),
    #[error("value is not rational")]
    NotRational,
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("intersection form is not negative definite: leading minor of size {size} is {value}")]
    NotNegativeDefinite { size: usize, value: BigInt },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: BigInt, cap: u64 },
    #[error("vertex {0} is not an admissible base vertex for this character")]
    InvalidBaseVertex(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
    #[error("invalid Seifert invariants: {0}")]
    InvalidSeifert(String),
    #[error("not a rational homology sphere: {0}")]
    NotQHS(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable name of the error kind, for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularMatrix => "SingularMatrix",
            Error::DivisionByZero => "DivisionByZero",
            Error::ConductorMismatch(..) => "ConductorMismatch",
            Error::NotRational => "NotRational",
            Error::NotATree(_) => "NotATree",
            Error::NotNegativeDefinite { .. } => "NotNegativeDefinite",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::InvalidBaseVertex(_) => "InvalidBaseVertex",
            Error::InternalInvariantViolated(_) => "InternalInvariantViolated",
            Error::InvalidSeifert(_) => "InvalidSeifert",
            Error::NotQHS(_) => "NotQHS",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
