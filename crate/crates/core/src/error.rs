use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} outside ground set [1, {n}]")]
    ElementOutOfRange { element: i64, n: usize },

    #[error("set of size {found} in a {expected}-uniform family")]
    WrongUniformity { expected: usize, found: usize },

    #[error("ground set of size {0} exceeds the supported width of {max}", max = crate::family::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("bound inapplicable: {0}")]
    Inapplicable(String),

    #[error("covering number of the empty family is undefined")]
    EmptyFamily,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ElementOutOfRange { .. } | Error::WrongUniformity { .. } => "invalid_family",
            Error::GroundTooLarge(_) => "ground_too_large",
            Error::InvalidParams(_) => "precondition",
            Error::GuardExceeded(_) => "guard_exceeded",
            Error::Inapplicable(_) => "inapplicable",
            Error::EmptyFamily => "empty_family",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::GuardExceeded(msg.into())
    }
}
