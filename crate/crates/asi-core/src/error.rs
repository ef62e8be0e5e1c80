use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller handed over something malformed: non-finite angles,
    /// mismatched lengths, an unknown group, parameters out of range.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A numerical routine could not produce a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// An internal invariant broke; this is a bug, not a user error.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
