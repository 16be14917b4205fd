use thiserror::Error;

/// Errors raised by the library. Every variant names the offending field or
/// quantity so that command-line diagnostics fit on one line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{field}: {message}")]
    Domain { field: String, message: String },

    #[error("size limit exceeded for {what}: {got} > {limit}")]
    Size {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("cannot parse {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn domain(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Domain {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn dimension(what: &'static str, expected: usize, got: usize) -> Self {
        Error::Dimension {
            what,
            expected,
            got,
        }
    }

    pub(crate) fn size(what: &'static str, limit: usize, got: usize) -> Self {
        Error::Size { what, limit, got }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
