use thiserror::Error;

/// Errors produced by table validation, construction and the closure computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry at ({row}, {col}) is {value}, outside 0..{order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not an ideal: {s}*{a} or {a}*{s} leaves the set")]
    NotAnIdeal { s: usize, a: usize },

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: usize },

    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn limit(what: impl Into<String>, limit: usize) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            limit,
        }
    }
}
