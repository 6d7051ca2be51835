use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simple type {series}{rank}: {reason}")]
    InvalidType { series: char, rank: usize, reason: String },

    #[error("weight has {got} coordinates, algebra has rank {rank}")]
    RankMismatch { got: usize, rank: usize },

    #[error("weights belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),

    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),

    #[error("kappa = {0} lies in the non-negative reals; finiteness of the singular locus is not guaranteed")]
    NonNegativeRealKappa(String),

    #[error("kappa must be nonzero (critical level)")]
    CriticalLevel,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("truncation window too small: {0}")]
    WindowTooSmall(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
