use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for alphabet of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid generator name `{0}`")]
    InvalidName(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },

    #[error("line {line}: {source}")]
    ParseLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("relator {0} is the identity")]
    IdentityRelator(usize),

    #[error("renaming with suffix `{suffix}` collides on `{name}`")]
    NameCollision { suffix: String, name: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("presentation `{0}` is not perfect")]
    NotPerfect(String),

    #[error("internal solve failure for generator {0}; perfect input must have a full row lattice")]
    InternalSolveFailure(usize),

    #[error("small-cancellation check failed after {attempts} attempts (last ratio {ratio})")]
    MetricFailure { attempts: usize, ratio: String },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("exponent {0} does not fit a machine word")]
    ExponentOverflow(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { col, msg: msg.into() }
    }

    pub fn at_line(self, line: usize) -> Self {
        Error::ParseLine { line, source: Box::new(self) }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPerfect(_) | Error::MetricFailure { .. } | Error::InternalSolveFailure(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
