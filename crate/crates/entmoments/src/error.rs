use entmoments_core::error::Error as CoreError;

/// Failure of a CLI command, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Input that does not match its schema (exit code 2).
    #[error("{op}: schema error: {detail}")]
    Schema { op: &'static str, detail: String },
    /// A numerical stage failed (exit code 3).
    #[error("{0}")]
    Numeric(#[from] CoreError),
    /// A self-check did not hold (exit code 3).
    #[error("{0}")]
    Check(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn schema(op: &'static str, detail: impl Into<String>) -> Self {
        CliError::Schema { op, detail: detail.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Numeric(_) | CliError::Check(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// Input validation failures from the core count as schema errors.
pub(crate) fn as_schema(e: CoreError) -> CliError {
    match e {
        CoreError::InvalidInput { op, detail } | CoreError::Domain { op, detail } => CliError::Schema { op, detail },
        other => CliError::Numeric(other),
    }
}

pub type CliResult<T> = Result<T, CliError>;
