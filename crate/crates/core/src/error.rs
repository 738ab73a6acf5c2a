use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain where a formula or operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Instance too large for an exhaustive routine.
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// Malformed graph or coloring text. `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
