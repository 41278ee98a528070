use std::fmt;

/// Errors surfaced by library operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A token could not be parsed as an integer. `line` is 1-based.
    Parse { line: usize, token: String },
    /// A value violated an operation's domain contract.
    Domain(String),
    /// A malformed specifier or invalid argument combination.
    Usage(String),
    /// An operation that requires exact (optimal) inputs received bounds.
    NonOptimal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { line, token } => {
                write!(f, "line {line}: cannot parse {token:?} as an integer")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::NonOptimal(msg) => write!(f, "non-optimal input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
