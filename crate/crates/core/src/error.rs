use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    ZeroInverse,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("elements belong to different algebras")]
    AmbientMismatch,

    #[error("algebra is not associative: ({0}, {1}, {2})")]
    NotAssociative(String, String, String),

    #[error("algebra has no unit; adjoin one before calling the oracle")]
    NotUnital,

    #[error("dimension {dim} exceeds the oracle bound {bound}")]
    DimensionBound { dim: usize, bound: usize },

    #[error("infinite-dimensional request: {0}")]
    InfiniteDimensional(String),

    #[error("relation violates the admissibility bounds: {0}")]
    Admissibility(String),

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("formula not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid Hopf parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),

    #[error("action is not a module-algebra action: {0}")]
    ModuleAlgebra(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
