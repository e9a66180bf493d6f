use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),

    #[error("node {0} has no incident edge")]
    NoIncidentEdge(usize),

    #[error("graph admits no degree-preserving rewiring")]
    Unperturbable,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 2 for configuration errors, 3 for bad input
    /// data, 4 for failures during a run.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Parse { .. } | Error::Validation(_) | Error::Io(_) | Error::Json(_) => 3,
            Error::DegenerateGraph(_) | Error::NoIncidentEdge(_) | Error::Unperturbable | Error::Csv(_) => 4,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
