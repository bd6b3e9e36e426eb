use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("index {index} out of range 1..={bound}")]
    Index { index: usize, bound: usize },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("rank error: expected bundle rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },
    #[error("out of range: {0}")]
    Range(String),
    #[error("not a jet form: {0}")]
    NotJetForm(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid chart: {0}")]
    Chart(String),
}

pub type Result<T> = std::result::Result<T, Error>;
