use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate coordinate ({row}, {col})")]
    DuplicateCoordinate { row: usize, col: usize },

    #[error("{what} index {index} out of bounds (limit {bound})")]
    IndexOutOfBounds {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("input not sorted by (column, row) at position {position}")]
    UnsortedInput { position: usize },

    #[error("process count {0} is not a perfect square")]
    NotPerfectSquare(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index map sends {index} outside destination extent {bound}")]
    MappingOutOfRange { index: usize, bound: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("two sparse-vector entries map to the same target {value}")]
    DuplicateTarget { value: usize },

    #[error("index {index} appears more than once in an index vector")]
    DuplicateIndex { index: usize },

    #[error("rank {rank} left the run while collective round {round} was pending")]
    Deadlock { rank: usize, round: u64 },

    #[error("collective mismatch in round {round}: expected {expected}, rank {rank} called {found}")]
    CollectiveMismatch {
        round: u64,
        rank: usize,
        expected: String,
        found: String,
    },

    #[error("rank {rank} panicked: {message}")]
    RankPanic { rank: usize, message: String },

    #[error("run aborted because another rank failed")]
    Aborted,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("duplicate entry ({row}, {col}) (1-based)")]
    DuplicateEntry { row: usize, col: usize },

    #[error("load imbalance undefined for a matrix with no nonzeros")]
    EmptyMatrix,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that are consequences of a failure on some other rank rather
    /// than a root cause.
    pub(crate) fn is_secondary(&self) -> bool {
        matches!(self, Error::Aborted | Error::Deadlock { .. })
    }
}
