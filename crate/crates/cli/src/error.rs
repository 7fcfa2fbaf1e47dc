use std::fmt;
use std::path::{Path, PathBuf};

use pe_core::Error;

/// Exit status for a run that completed.
pub const EXIT_OK: i32 = 0;
/// Computation failed: calibration, fit degeneracy, undefined metrics.
pub const EXIT_COMPUTE: i32 = 1;
/// Bad invocation or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Input { path: PathBuf, source: std::io::Error },
    Output { path: PathBuf, source: std::io::Error },
    InFile { path: PathBuf, source: Error },
}

impl CliError {
    pub fn input(path: &Path, source: std::io::Error) -> Self {
        CliError::Input { path: path.to_path_buf(), source }
    }

    pub fn output(path: &Path, source: std::io::Error) -> Self {
        CliError::Output { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } => EXIT_USAGE,
            CliError::Output { .. } => EXIT_COMPUTE,
            CliError::Core(e) | CliError::InFile { source: e, .. } => match e {
                Error::Parse { .. } | Error::InsufficientData(_) | Error::Alignment(_) => EXIT_USAGE,
                _ => EXIT_COMPUTE,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input { path, source } => write!(f, "cannot read {}: {source}", path.display()),
            CliError::Output { path, source } => write!(f, "cannot write {}: {source}", path.display()),
            CliError::InFile { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
