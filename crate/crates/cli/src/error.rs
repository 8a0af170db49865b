use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("input validation failed: {0}")]
    Validation(String),

    #[error("bound violation detected: {0}")]
    Violation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status: 1 usage (and I/O), 2 input validation, 3 bound violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Violation(_) => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Names the failed state invariant in front of the core diagnostic.
pub fn describe_invalid_state(err: &mixent::Error) -> String {
    let invariant = match err {
        mixent::Error::NotHermitian { .. } => "hermiticity",
        mixent::Error::TraceNotUnit { .. } => "trace",
        mixent::Error::NotPsd { .. } => "positivity",
        _ => "state",
    };
    format!("{invariant}: {err}")
}
