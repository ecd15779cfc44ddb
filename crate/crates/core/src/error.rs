use thiserror::Error;

/// Failure modes of the recoil library.
///
/// The CLI maps [`Error::InvalidArgument`] and [`Error::Domain`] to exit code 2
/// and everything else to exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{module}: invalid argument: {message}")]
    InvalidArgument { module: &'static str, message: String },
    #[error("{module}: domain error: {message}")]
    Domain { module: &'static str, message: String },
    #[error("{module}: numerical failure: {message}")]
    Numerical { module: &'static str, message: String },
}

impl Error {
    pub fn invalid(module: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidArgument { module, message: message.into() }
    }

    pub fn domain(module: &'static str, message: impl Into<String>) -> Self {
        Error::Domain { module, message: message.into() }
    }

    pub fn numerical(module: &'static str, message: impl Into<String>) -> Self {
        Error::Numerical { module, message: message.into() }
    }

    /// True for caller mistakes (bad input), false for numerical breakdowns.
    pub fn is_user_error(&self) -> bool {
        matches!(self, Error::InvalidArgument { .. } | Error::Domain { .. })
    }

    pub fn module(&self) -> &'static str {
        match self {
            Error::InvalidArgument { module, .. }
            | Error::Domain { module, .. }
            | Error::Numerical { module, .. } => module,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
