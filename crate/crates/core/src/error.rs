use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable machine-readable
/// [`Error::kind`] string used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry bit-length {bits} exceeds the configured cap of {cap} bits")]
    Capacity { bits: u64, cap: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),

    #[error("relator {relator} does not evaluate to the identity")]
    RelatorViolated { relator: usize },

    #[error("coboundary composition D_{next}*D_{degree} is nonzero; complex is inconsistent")]
    Inconsistent { degree: usize, next: usize },

    #[error("complex is not acyclic over Q (degree {degree} has nonzero rational cohomology)")]
    NotAcyclic { degree: usize },

    #[error("weight {0} is not dominant")]
    NonDominant(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("infeasible shape: {0}")]
    Infeasible(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Capacity { .. } => "capacity",
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::RelatorViolated { .. } => "relator_violated",
            Error::Inconsistent { .. } => "inconsistent_complex",
            Error::NotAcyclic { .. } => "not_acyclic",
            Error::NonDominant(_) => "non_dominant",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::Infeasible(_) => "infeasible",
            Error::IllConditioned(_) => "ill_conditioned",
            Error::Internal(_) => "internal",
        }
    }

    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
