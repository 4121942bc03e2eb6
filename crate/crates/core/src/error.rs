use std::fmt;

use thiserror::Error;

/// Where a parse failure happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Byte(usize),
    Line(usize),
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Byte(b) => write!(f, "byte {b}"),
            Position::Line(l) => write!(f, "line {l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("modulus {0} is not prime")]
    CompositeModulus(u32),

    #[error("bases violate the exchange axiom: removing {element} from {first:?} admits no replacement from {second:?}")]
    InvalidBases {
        first: Vec<usize>,
        second: Vec<usize>,
        element: usize,
    },

    #[error("operation would leave an empty ground set")]
    EmptyMatroid,

    #[error("set is not a {0}")]
    NotCircuitHyperplane(&'static str),

    #[error("degenerate matroid: {0}")]
    Degenerate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("construction bug: {0}")]
    ConstructionBug(String),

    #[error("parse error at {at}: {message}")]
    Parse { at: Position, message: String },

    #[error("search exceeded {0} nodes")]
    SearchCap(u64),

    #[error("sampling gave up after {0} attempts")]
    Sampling(u64),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Error {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(at: Position, msg: impl Into<String>) -> Error {
        Error::Parse {
            at,
            message: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
