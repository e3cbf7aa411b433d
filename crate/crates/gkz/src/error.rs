use std::fmt;

use gkz_core::curves::CurvesError;
use gkz_core::orlov::OrlovError;
use gkz_core::toric::ToricError;

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or a command that does not fit the input.
    Usage(String),
    Schema { field: String, reason: String },
    Io(String),
    UnsupportedFormat { format: String, command: String },
    Toric(ToricError),
    Orlov(OrlovError),
    Curves(CurvesError),
    /// A value that does not fit the report's integer range.
    Overflow(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Schema { .. }
            | CliError::Io(_)
            | CliError::UnsupportedFormat { .. } => EXIT_USAGE,
            CliError::Toric(_) | CliError::Orlov(_) | CliError::Curves(_) | CliError::Overflow(_) => {
                EXIT_DOMAIN
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Schema { field, reason } => write!(f, "schema error at {field}: {reason}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::UnsupportedFormat { format, command } => {
                write!(f, "format {format} is not available for {command}")
            }
            CliError::Toric(e) => write!(f, "toric error: {e}"),
            CliError::Orlov(e) => write!(f, "orlov error: {e}"),
            CliError::Curves(e) => write!(f, "curves error: {e}"),
            CliError::Overflow(m) => write!(f, "value out of range: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        CliError::Toric(e)
    }
}

impl From<OrlovError> for CliError {
    fn from(e: OrlovError) -> Self {
        CliError::Orlov(e)
    }
}

impl From<CurvesError> for CliError {
    fn from(e: CurvesError) -> Self {
        CliError::Curves(e)
    }
}
