use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("rewrite did not terminate within {limit} steps")]
    IterationLimit { limit: usize },

    #[error("irreducible word is not in canonical order: {0}")]
    NotCanonical(String),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("eigensolver failed to converge for eigenvalue {index} after {iterations} iterations")]
    NonConvergence { index: usize, iterations: usize },

    #[error("sector mismatch: {0}")]
    SectorMismatch(String),

    #[error("degree overflow: function reaches j = {found} but the rule only covers j <= {cap}")]
    DegreeOverflow { found: f64, cap: f64 },

    #[error("matrix exponential lost unitarity (deviation {0:e})")]
    NonUnitary(f64),

    #[error("schema violation: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
