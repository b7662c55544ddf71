use thiserror::Error;

/// Errors produced by the tournament engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {n} outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("expected {expected} parts, found {found}")]
    PartCountMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set must not be empty")]
    EmptyVertexSet,

    #[error("arc endpoints must differ (got {0} twice)")]
    SameVertex(usize),

    #[error("adjacency is not a tournament: {0}")]
    NotATournament(String),

    #[error("{0} requires a strongly connected tournament")]
    NotStrong(&'static str),

    #[error("count overflow in {0}")]
    Overflow(&'static str),

    #[error("{what} is limited to order {max}, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("Douglas parameters violate {condition}: {detail}")]
    Douglas {
        condition: &'static str,
        detail: String,
    },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
