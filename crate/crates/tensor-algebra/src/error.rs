use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("index name `{0}` is not 1-4 characters from [a-z0-9']")]
    BadIndexName(String),
    #[error("malformed factor {factor}: {reason}")]
    Structural { factor: String, reason: String },
    #[error("index {label} appears {count} times")]
    BadContraction { label: String, count: usize },
    #[error("enumeration budget exceeded: {what} = {got} (limit {limit})")]
    Resource { what: &'static str, got: usize, limit: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("cannot differentiate non-observable factor {0}")]
    NotObservable(String),
}
