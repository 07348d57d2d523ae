use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid entry {value} at position {position}")]
    InvalidEntry { position: usize, value: i64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid quadruple shape: lengths ({a}, {b}, {c}, {d}) are not (n, n, n, n-1)")]
    InvalidShape {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },

    #[error("unsupported length n={0}: must be even")]
    UnsupportedLength(usize),

    #[error("quadruple is not a Turyn-type sequence")]
    NotTuryn,

    #[error("quadruple is not in canonical form")]
    NotCanonical,

    #[error("orbit contains {found} canonical members, expected exactly one")]
    CanonicalCount { found: usize },

    #[error("invalid base sequences")]
    InvalidBase,

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("n={n} exceeds the configured cap {cap} (estimated {estimate})")]
    CapExceeded {
        n: usize,
        cap: usize,
        estimate: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("corrupt checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
