use thiserror::Error;

/// Failure of a CLI job, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed {what}: {msg}")]
    Malformed { what: String, msg: String },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("not found within the horizon: {0}")]
    NotFound(String),
    #[error("check failed: {0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn malformed(what: &str, msg: impl Into<String>) -> CliError {
        CliError::Malformed { what: what.to_string(), msg: msg.into() }
    }

    /// 1 malformed input, 2 precondition, 3 not found, 4 failed check or audit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed { .. } | CliError::Io(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::NotFound(_) => 3,
            CliError::Failed(_) => 4,
        }
    }
}

impl From<clspace::Error> for CliError {
    fn from(e: clspace::Error) -> CliError {
        use clspace::Error as E;
        match e {
            E::Invalid(m) | E::Domain(m) => CliError::malformed("input", m),
            E::NotInSpace => CliError::NotFound("no finite bracket for the Minkowski functional".into()),
            E::Horizon(m) | E::NotFound(m) => CliError::NotFound(m),
            other => CliError::Precondition(other.to_string()),
        }
    }
}
