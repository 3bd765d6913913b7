use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid profile {profile}: {reason}")]
    InvalidProfile { profile: String, reason: String },

    #[error("profile {0} describes an infinite algebra")]
    InfiniteAlgebra(String),

    #[error("{sub} is not a sub-Hopf algebra of {ambient}")]
    NotSubalgebra { sub: String, ambient: String },

    #[error("{sub} is not normal in {ambient}")]
    NotNormal { sub: String, ambient: String },

    #[error("modules are over different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid module map: {0}")]
    InvalidMap(String),

    #[error("{what} needs dimension {dim}, over the configured cap {cap}")]
    ResourceLimit { what: String, dim: usize, cap: usize },

    #[error("free summand could not be split off: {0}")]
    Retraction(String),

    #[error("{0}")]
    Membership(String),

    #[error("{0}")]
    Structure(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
