use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter {0:?}")]
    InvalidLetter(char),

    #[error("word {word:?} is not reduced: {reason}")]
    NotReduced { word: String, reason: String },

    #[error("the empty word has no index")]
    EmptyWord,

    #[error("word of length {0} is too long to index")]
    WordTooLong(usize),

    #[error("window data does not match radius {radius}: expected {expected} letters, got {got}")]
    WindowShape { radius: u64, expected: usize, got: usize },

    #[error("inconsistent displacement field: one window content yields both {first} and {second}")]
    InconsistentField { first: String, second: String },

    #[error("assignment is not bijective: cylinders {0} and {1} share a target")]
    NotBijective(usize, usize),

    #[error("odometer parameters differ: {0}")]
    ParamMismatch(String),

    #[error("invalid odometer data: {0}")]
    InvalidOdometer(String),

    #[error("{what} = {value} exceeds the limit {limit}")]
    CostGuard { what: &'static str, value: String, limit: String },

    #[error("pattern {0} does not occur within the searched area")]
    PatternAbsent(String),

    #[error("construction bug: {0}")]
    ConstructionBug(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
}
