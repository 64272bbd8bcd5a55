use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {position} in `{input}`: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("unbound generator name `{0}`")]
    UnboundName(String),
    #[error("not a dyadic rational: {0}")]
    NotDyadic(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid arc set: {0}")]
    InvalidArcSet(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no rotation number with denominator <= {q_max}")]
    NotFoundWithinBound { q_max: u32 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
