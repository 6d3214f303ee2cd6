use std::fmt;
use std::path::{Path, PathBuf};

/// Failure of a run, carrying the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or invalid run configuration (exit 2).
    Config(String),
    /// The computation itself failed (exit 3).
    Numerical { name: &'static str, message: String },
    /// Reading or writing a file failed (exit 4).
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn config(field: &str, message: impl fmt::Display) -> Self {
        CliError::Config(format!("{field}: {message}"))
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Library errors raised while setting up a run point at bad input;
    /// everything else is a numerical failure.
    pub(crate) fn library(field: &str, e: braidsim::Error) -> Self {
        use braidsim::Error as E;
        match e {
            E::UnknownLabel(_)
            | E::LabelOutOfRange { .. }
            | E::InvalidChannel { .. }
            | E::NotAbelian(_)
            | E::InvalidSchedule(_)
            | E::InvalidArgument(_)
            | E::IndexOutOfRange { .. }
            | E::ModelFormat { .. } => CliError::config(field, e),
            other => CliError::Numerical {
                name: other.name(),
                message: other.to_string(),
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical { name, message } => write!(f, "numerical failure ({name}): {message}"),
            CliError::Io { path, source } => write!(f, "I/O error: {}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}
