//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the operation's domain (bad k, negative size, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The instance exceeds a configured capacity limit for exact work.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Malformed graph6 input; `offset` is the byte position of the defect.
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    /// A construction could not be realized: infeasible rounding, or the
    /// certified deficiency budget was missed (`achieved` = exact deficiency
    /// the build reached, when one exists).
    #[error("construction infeasible: {msg}{}", match achieved { Some(a) => format!(" (achieved deficiency {a})"), None => String::new() })]
    Construction { msg: String, achieved: Option<i64> },

    /// A documented precondition does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
