use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// The caller violated an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// A structural invariant of an algebra or frame does not hold.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("no generator ingredients satisfy the side conditions: {0}")]
    IngredientSearch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
