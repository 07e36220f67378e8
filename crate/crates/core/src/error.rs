use thiserror::Error;

use crate::g2::KType;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("pole at s = {0}")]
    PoleAtPoint(String),

    #[error("valuation of the zero function is infinite")]
    ZeroFunction,

    #[error("matrix is rank deficient (rank {rank} < {needed})")]
    RankDeficient { rank: usize, needed: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("matrix is singular as a function of s")]
    SingularEverywhere,

    #[error("offsets do not pair to a rational function: {0}")]
    UnpairableOffsets(String),

    #[error("K-type ({n},{m}) is invalid: {reason}")]
    InvalidKType { n: i64, m: i64, reason: String },

    #[error(
        "intertwining relations leave A at {ktype} underdetermined (rank {rank} < {dim}); free slots {free:?}"
    )]
    Underdetermined {
        ktype: KType,
        rank: usize,
        dim: usize,
        free: Vec<usize>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed identity that must hold exactly did not.
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// True for errors caused by the inputs rather than by a failed identity.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Invariant(_) | Error::Underdetermined { .. })
    }
}
