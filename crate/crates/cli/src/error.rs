use dbubble_core::closed_forms::ClosedFormError;
use dbubble_core::geometry::io::GridFileError;
use dbubble_core::search::SearchError;
use dbubble_core::slicing::SlicingError;
use thiserror::Error;

pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    /// Inputs outside the hypotheses of the requested computation.
    #[error("{message}")]
    Hypothesis { code: &'static str, message: String },
    #[error("{message}")]
    Parse { code: &'static str, message: String },
    #[error("{0}")]
    Certification(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Hypothesis { code, .. } | CliError::Parse { code, .. } => code,
            CliError::Certification(_) => "certification_failed",
            CliError::Io { .. } => "io_error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hypothesis { .. } => EXIT_HYPOTHESIS,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Certification(_) => EXIT_CERTIFICATION,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub fn io(path: impl std::fmt::Display, err: impl std::fmt::Display) -> CliError {
        CliError::Io { path: path.to_string(), message: err.to_string() }
    }

    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::Parse { code: "usage", message: message.into() }
    }
}

impl From<ClosedFormError> for CliError {
    fn from(e: ClosedFormError) -> CliError {
        let code = match e {
            ClosedFormError::InvalidArgument { .. } => "invalid_argument",
            ClosedFormError::RatioOutOfRange { .. } => "ratio_out_of_range",
        };
        CliError::Hypothesis { code, message: e.to_string() }
    }
}

impl From<SlicingError> for CliError {
    fn from(e: SlicingError) -> CliError {
        CliError::Hypothesis { code: e.code(), message: e.to_string() }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> CliError {
        CliError::Hypothesis { code: e.code(), message: e.to_string() }
    }
}

impl From<GridFileError> for CliError {
    fn from(e: GridFileError) -> CliError {
        match e {
            GridFileError::Io { path, source } => CliError::io(path, source),
            GridFileError::Parse { .. } => CliError::Parse { code: "grid_parse_error", message: e.to_string() },
            GridFileError::Invalid(_) => CliError::Parse { code: "invalid_configuration", message: e.to_string() },
        }
    }
}
