//! Library half of the `tjc` command line: configuration parsing, sweep
//! engines, dataset writers and the verification battery. The binary in
//! `main.rs` is a thin argument-parsing shell over these functions so that
//! integration tests can drive everything in-process.

pub mod commands;
pub mod config;
pub mod crossings;
pub mod output;
pub mod rows;
pub mod verify;

/// CLI-level error, carrying the process exit code policy:
/// usage errors exit 1, numerical verification failures exit 2, I/O
/// failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tjc_core::Error> for CliError {
    fn from(e: tjc_core::Error) -> Self {
        match e {
            tjc_core::Error::InvalidParameter(m) | tjc_core::Error::Structure(m) => {
                CliError::Usage(m)
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
