use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("empty input: no edges found")]
    EmptyInput,

    #[error("ordering is not a permutation of the vertex set")]
    NotAPermutation,

    #[error("unsupported admissibility radius r={0}, supported: 1..=3")]
    UnsupportedRadius(u32),

    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}
