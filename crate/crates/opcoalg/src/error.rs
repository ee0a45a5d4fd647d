use thiserror::Error;

/// Error type shared by every module in the crate.
///
/// Violations of checked laws are *not* errors: law checkers return reports
/// listing witnesses. Errors are reserved for malformed inputs, unsupported
/// structure, and exhausted bounds or budgets.
#[derive(Debug, Error)]
pub enum Error {
    /// Domain/codomain or table-shape mismatch in a composite.
    #[error("structural mismatch: {0}")]
    Structural(String),

    /// The operation needs structure the input does not have
    /// (e.g. a collapse map in a non-semicartesian category).
    #[error("unsupported structure: {0}")]
    Unsupported(String),

    /// An instance bound was exceeded while realizing an object.
    #[error("bound exceeded: {0}")]
    Bound(String),

    /// A combinatorial search hit its budget.
    #[error("search budget of {budget} exceeded after {attempted} candidates ({context})")]
    Budget {
        budget: usize,
        attempted: usize,
        context: String,
    },

    /// Input data failed validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A spec document could not be parsed; `path` is the field path.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
