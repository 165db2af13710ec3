use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {0} is outside the supported range 1..=6")]
    LevelOutOfRange(u32),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("cannot embed level {from} into lower level {to}")]
    EmbedDown { from: u32, to: u32 },

    #[error("{0} variables exceeds the cap of {1}")]
    TooManyVariables(u32, u32),

    #[error("malformed truth table: {0}")]
    Parse(String),

    #[error("expected {expected} values, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("value {value} at index {index} is not below 2^{k}")]
    ValueOutOfRange { index: usize, value: u64, k: u32 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("split point {j} outside 1..{k}")]
    SplitOutOfRange { j: u32, k: u32 },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("function is not gbent")]
    NotGbent,

    #[error("requires an even number of variables, got n = {0}")]
    OddVariableCount(u32),

    #[error("n = {0} is too large for the quadratic reference transform (max 14)")]
    NaiveTooLarge(u32),

    #[error("permutation is not a bijection on [0, {0})")]
    NotBijective(usize),

    #[error("infeasible search: {0}")]
    Infeasible(String),

    #[error("i/o: {0}")]
    Io(String),

    /// Two encodings of the same characterization produced different answers.
    #[error("encodings disagree: {0}")]
    Disagreement(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
