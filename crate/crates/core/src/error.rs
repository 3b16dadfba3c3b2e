use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Grassmannian context G({m},{n}): need 0 <= m < n")]
    InvalidContext { m: i64, n: i64 },

    #[error("invalid index {index} for {ctx}: {reason}")]
    InvalidIndex {
        index: String,
        ctx: String,
        reason: String,
    },

    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix is rank deficient: row {row} is dependent on the rows before it")]
    RankDeficient { row: usize },

    #[error("unsupported field or field size: {0}")]
    UnsupportedField(String),

    #[error("enumeration too large: {0}")]
    GuardExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An arithmetic invariant that must hold by construction was violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
