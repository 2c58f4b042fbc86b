//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Degrees 8 and 9 have no `(-2)`-classes at all; degree 0 and below make
    /// no sense in this model.
    #[error("unsupported degree {0}: only degrees 1 through 7 are modelled")]
    UnsupportedDegree(i64),

    #[error("dimension mismatch: expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The intersection graph of a root set is not a simply-laced Dynkin
    /// diagram (contains a cycle, a vertex of degree >= 4, or two branch
    /// vertices), which means the input was not a valid Pi-system.
    #[error("not a simply-laced Dynkin diagram: {0}")]
    NotSimplyLaced(String),

    #[error("invalid Dynkin label {family}{rank}")]
    InvalidLabel { family: char, rank: usize },

    /// Columns expected to be linearly independent are not.
    #[error("rank-deficient input: {cols} columns but rank {rank}")]
    RankDeficient { cols: usize, rank: usize },

    #[error("vectors do not form a Pi-system: {0}")]
    InvariantViolation(String),

    #[error("operation requires a maximal-rank Pi-system ({expected} roots), got {found}")]
    NotMaximalRank { expected: usize, found: usize },

    #[error("operation requires a single connected component")]
    Disconnected,

    /// The pairing matrix of a Pi-system should always have full row rank, so
    /// a free summand in its cokernel signals corrupted input.
    #[error("internal inconsistency: cokernel has unexpected free rank {0}")]
    UnexpectedFreeRank(usize),
}
