use thiserror::Error;

use crate::textio::SourceSpan;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vocabulary or domain mismatch between interpretations")]
    VocabularyMismatch,

    #[error("unknown shape name `{0}`")]
    UnknownShape(String),

    #[error("unknown constant `{0}`: not a node of the graph")]
    UnknownConstant(String),

    #[error("{0}")]
    InvalidSchema(String),

    #[error("{span}: {message}")]
    Parse { span: SourceSpan, message: String },

    #[error("search space of {needed} candidates exceeds the cap of {cap} (raise it with --max-candidates)")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("inconsistent pair: lower bound is not contained in upper bound")]
    Inconsistent,

    #[error("model search explored more than {cap} candidates (raise it with --max-candidates)")]
    CandidateLimit { cap: u128 },

    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),

    #[error("interpretation is not a supported model")]
    NotSupported,

    #[error("fixpoint iteration did not converge within {0} steps; operator is not monotone")]
    NoConvergence(usize),
}
