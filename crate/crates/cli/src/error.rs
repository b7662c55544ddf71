//! Failure classes and their process exit codes.

use std::fmt;
use std::path::PathBuf;

use moonlab_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    /// An error raised by the engine; its variant decides the exit code.
    Core(Error),
    /// Reading an input file or writing output failed.
    Io { path: PathBuf, source: std::io::Error },
    /// A malformed input document, located by file name.
    Input { path: String, source: Error },
    /// Incompatible flags that clap cannot express.
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::Io { .. } | CliError::Input { .. } => EXIT_INPUT,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

fn core_exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::NotATournament(_) | Error::NotStrong(_) => EXIT_INPUT,
        Error::TooLarge { .. } | Error::Overflow(_) => EXIT_GUARD,
        Error::OrderOutOfRange { n, max, .. } if n > max => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Input { path, source } => write!(f, "{path}: {source}"),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
