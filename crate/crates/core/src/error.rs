use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element does not follow the carrier pattern of its term.
    #[error("malformed element: {0}")]
    MalformedElement(String),

    /// A subgroup is not contained in the group it is supposed to restrict.
    #[error("subgroup chain violation: {0}")]
    SubgroupChainViolation(String),

    /// A type II/IV product was requested over a first factor whose group
    /// part is not discretely embedded.
    #[error("discreteness violation: {0}")]
    DiscretenessViolation(String),

    /// A subgroup descriptor has the wrong number of coordinates.
    #[error("arity error: expected {expected} subgroup coordinate(s), found {found}")]
    ArityError { expected: usize, found: usize },

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("rewrite pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("not realizable over the reals: {0}")]
    NotRealizable(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// True for the errors that reject a construction term.
    pub fn is_invalid_term(&self) -> bool {
        matches!(
            self,
            Error::SubgroupChainViolation(_)
                | Error::DiscretenessViolation(_)
                | Error::ArityError { .. }
                | Error::InvalidTerm(_)
        )
    }
}
