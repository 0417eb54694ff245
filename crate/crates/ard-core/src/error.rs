//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, ArdError>;

/// Errors raised by dataset ingestion, model fitting, and diagnostics.
#[derive(Debug)]
pub enum ArdError {
    /// I/O failure while reading or writing an artifact.
    Io(std::io::Error),
    /// Malformed CSV input.
    Csv(csv::Error),
    /// A cell could not be parsed as the expected numeric type.
    Parse {
        file: String,
        row: usize,
        column: String,
        detail: String,
    },
    /// Respondent identifiers do not line up across input files.
    IdentifierMismatch(String),
    /// The same respondent identifier appears twice.
    DuplicateIdentifier(String),
    /// Matrix or vector shapes disagree.
    DimensionMismatch(String),
    /// An argument violates a precondition (bad column name, empty scope, ...).
    InvalidArgument(String),
    /// A workflow stage failed; partial artifacts are left in place.
    Stage {
        stage: &'static str,
        source: Box<ArdError>,
    },
}

impl fmt::Display for ArdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArdError::Io(e) => write!(f, "i/o error: {e}"),
            ArdError::Csv(e) => write!(f, "csv error: {e}"),
            ArdError::Parse {
                file,
                row,
                column,
                detail,
            } => {
                write!(f, "{file}: row {row}, column {column}: {detail}")
            }
            ArdError::IdentifierMismatch(msg) => write!(f, "identifier mismatch: {msg}"),
            ArdError::DuplicateIdentifier(id) => write!(f, "duplicate identifier: {id}"),
            ArdError::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            ArdError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            ArdError::Stage { stage, source } => write!(f, "stage '{stage}' failed: {source}"),
        }
    }
}

impl std::error::Error for ArdError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ArdError::Io(e) => Some(e),
            ArdError::Csv(e) => Some(e),
            ArdError::Stage { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

impl From<std::io::Error> for ArdError {
    fn from(e: std::io::Error) -> Self {
        ArdError::Io(e)
    }
}

impl From<csv::Error> for ArdError {
    fn from(e: csv::Error) -> Self {
        ArdError::Csv(e)
    }
}

impl ArdError {
    /// True for errors caused by bad user input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            ArdError::Csv(_)
                | ArdError::Parse { .. }
                | ArdError::IdentifierMismatch(_)
                | ArdError::DuplicateIdentifier(_)
                | ArdError::InvalidArgument(_)
        )
    }

    pub(crate) fn stage(stage: &'static str) -> impl FnOnce(ArdError) -> ArdError {
        move |e| ArdError::Stage {
            stage,
            source: Box::new(e),
        }
    }
}
