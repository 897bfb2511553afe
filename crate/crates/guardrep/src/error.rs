use std::fmt;
use std::io;

/// Failures surfaced by the file formats and the CLI.
#[derive(Debug)]
pub enum Error {
    /// The file (or stdin) could not be read or written.
    Io { path: String, source: io::Error },
    /// The file was read but is not a valid matrix/family document.
    Format { path: String, message: String },
    /// A numerical precondition failed.
    Core(guardrep_core::Error),
    /// A flag value is out of range or inconsistent with the input.
    Param(String),
}

impl Error {
    /// 1 for unreadable or malformed files, 2 for dimension and parameter
    /// violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Format { .. } => 1,
            Error::Core(_) | Error::Param(_) => 2,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Io { path, source } => write!(f, "{path}: {source}"),
            Error::Format { path, message } => write!(f, "{path}: {message}"),
            Error::Core(e) => write!(f, "{e}"),
            Error::Param(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            Error::Core(e) => Some(e),
            _ => None,
        }
    }
}

impl From<guardrep_core::Error> for Error {
    fn from(e: guardrep_core::Error) -> Self {
        Error::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
