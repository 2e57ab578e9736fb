use tensor_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("no index form catalogued for invariant `{0}`")]
    Unsupported(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
