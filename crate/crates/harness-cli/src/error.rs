use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown check `{name}`; valid checks: {}", valid.join(", "))]
    UnknownCheck { name: String, valid: Vec<String> },
    #[error("cannot read {path}: {source}")]
    Missing { path: String, source: std::io::Error },
    #[error("malformed {what}: {source}")]
    Malformed { what: String, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Engine(#[from] coefficient_engine::EngineError),
    #[error(transparent)]
    Lab(#[from] geometry_lab::LabError),
}

impl HarnessError {
    /// 2 for anything the user can fix on the command line or in the config.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_)
            | HarnessError::UnknownCheck { .. }
            | HarnessError::Missing { .. }
            | HarnessError::Malformed { .. } => 2,
            _ => 1,
        }
    }
}
