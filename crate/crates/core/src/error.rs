use thiserror::Error;

use crate::scalar::RingKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (dimensions, indices, arities).
    #[error("input error: {0}")]
    Input(String),

    #[error("operation requires a field; the {0} ring is not supported here")]
    UnsupportedRing(RingKind),

    #[error("{0} is not invertible")]
    NotInvertible(String),

    /// A checked precondition failed; `detail` renders the counterexample.
    #[error("precondition `{check}` failed: {detail}")]
    Precondition { check: String, detail: String },

    #[error("size guard exceeded: {what} needs {needed} entries, limit is {limit}")]
    Resource {
        what: String,
        needed: usize,
        limit: usize,
    },

    /// Two independent computations disagreed.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
