use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact integer computation left the 128-bit range.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    /// Enumeration would produce more items than the configured cap.
    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    /// A closed form disagreed with an identity it must satisfy.
    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }
}
