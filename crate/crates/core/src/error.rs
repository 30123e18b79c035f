use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("composition undefined: {0}")]
    CompositionUndefined(String),
    #[error("invalid ideal presentation: {0}")]
    InvalidPresentation(String),
    #[error("completion overflow: more than {cap} rules while completing at degree {degree}")]
    CompletionOverflow { cap: usize, degree: usize },
    #[error("degree {degree} exceeds completion degree {completed_to}")]
    DegreeOverflow { degree: usize, completed_to: usize },
    #[error("undecided within degree bound {bound}")]
    UnknownAtBound { bound: usize },
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("model/configuration mismatch: {0}")]
    ModelMismatch(String),
}
