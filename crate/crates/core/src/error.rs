use thiserror::Error;

/// Errors shared across the crate. Checker *failures* are not errors: they come
/// back as [`crate::report::Report`] items. An `Error` means the request itself
/// was malformed or a precondition needed to even run the computation is missing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Shape(String),

    #[error("operands use different variable lists ({left} vs {right})")]
    VarMismatch { left: String, right: String },

    #[error("operands belong to different bases")]
    BaseMismatch,

    #[error("expected {expected} argument(s), got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("refused: {context}")]
    Refused {
        context: String,
        report: crate::report::Report,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
