use thiserror::Error;

/// Errors raised by the spectral toolkit.
///
/// The variants line up with the process exit codes of the command-line
/// front end: `Input`, `Config`, `Domain` and `Io` are caller mistakes
/// (exit 1), `Numerical` is a failure of a numerical routine (exit 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("outside the domain of the operation: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
