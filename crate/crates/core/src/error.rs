use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("vector is not a cocycle in degree {0}")]
    NotACocycle(usize),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("sequence is not filter-regular")]
    NotFilterRegular,
    #[error("difference of element {0} is not nilpotent")]
    NotNilpotent(usize),
    #[error("truncation degree {0} too low to construct parameters")]
    TruncationTooLow(usize),
    #[error("completion test requires prank >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("completion test requires parameter degrees >= 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("no completion certificate up to degree {0}")]
    Incomplete(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("corrupt file: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
