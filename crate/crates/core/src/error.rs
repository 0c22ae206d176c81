use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("no value assigned to {0}")]
    MissingAssignment(String),
    #[error("integration failed at stage {stage}")]
    IntegrationFailed { stage: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix is not in g0")]
    NotInG0,
    #[error("need at least {needed} sample rows, got {got}")]
    InsufficientRows { needed: usize, got: usize },
    #[error("nonzero residual: {0}")]
    Residual(String),
    #[error("invalid data: {0}")]
    Data(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
