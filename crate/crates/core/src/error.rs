use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sigma must be finite and >= 1, got {0}")]
    InvalidSigma(f64),

    #[error("r must be finite, got {0}")]
    InvalidR(f64),

    #[error("non-finite component in block {block}")]
    NonFiniteBlock { block: usize },

    #[error("invalid weight family `{input}`: {reason}")]
    InvalidWeights { input: String, reason: String },

    #[error("weight family `{0}` is bounded and cannot certify a D1 violation")]
    BoundedWeights(String),

    #[error("objective is not finite at r = {r}")]
    NonFiniteObjective { r: f64 },

    #[error("invalid search setup: {0}")]
    InvalidSearch(String),

    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),

    #[error("malformed sequence: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
