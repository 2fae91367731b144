use std::fmt;

use crate::word::Word;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid letter: generator a{index} is outside an alphabet of rank {rank}")]
    InvalidLetter { index: i64, rank: u32 },
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("alphabet rank must be at least 1")]
    EmptyAlphabet,
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("word {0} is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("word too large: {what} needs {needed} units, budget is {budget}")]
    TooLarge { what: &'static str, needed: String, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid index {0}: indices start at 1")]
    InvalidIndex(i64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("alphabet rank {0} is too small; at least 2 generators are required")]
    RankTooSmall(u32),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("parameter {0} must be positive")]
    NonPositiveParameter(&'static str),
    #[error("parameter chain broken: {larger} must exceed {smaller}")]
    BrokenChainOrder { larger: &'static str, smaller: &'static str },
    #[error("catalog unsatisfiable: item {item} blocks parameter {param}")]
    Unsatisfiable { item: String, param: &'static str },
    #[error("oracle budget exceeded; {} candidates left undecided", .indeterminate.len())]
    OracleBudgetExceeded { indeterminate: Vec<Word> },
    #[error("no conjugating witness found: {0}")]
    WitnessNotFound(String),
    #[error("Dehn reduction budget of {0} steps exhausted")]
    BudgetExceeded(usize),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("trace mismatch at step {step}: {reason}")]
    TraceMismatch { step: usize, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(msg: impl fmt::Display) -> Error {
    Error::Parse(msg.to_string())
}
