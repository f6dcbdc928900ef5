use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("strand count {0} outside supported range 1..={max}", max = crate::braid::MAX_STRANDS)]
    StrandCount(usize),

    #[error("letter {letter} out of range for {n} strands")]
    LetterOutOfRange { letter: i64, n: usize },

    #[error("not a permutation of 1..{n}: {images:?}")]
    InvalidPermutation { n: usize, images: Vec<usize> },

    #[error("braid is not positive")]
    NotPositive,

    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),

    #[error("index {index} out of bounds (expected {min}..={max})")]
    IndexOutOfBounds { index: usize, min: usize, max: usize },

    #[error("invalid Toffoli gate ({c1}, {c2}, {t}) on {wires} wires")]
    InvalidGate { c1: usize, c2: usize, t: usize, wires: usize },

    #[error("element set is not closed under the gate: ({a}, {b}) leaves it")]
    ClosureViolation { a: usize, b: usize },

    #[error("unsupported dit dimension {0} (exhaustive search supports 2 and 3)")]
    UnsupportedDimension(usize),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("element not in group: {0}")]
    NotInGroup(String),

    #[error("state does not decode to encoded bits: {0}")]
    Decode(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format { line, msg: msg.into() }
    }

    /// Format errors are usage problems; everything else is a domain error.
    pub fn is_format(&self) -> bool {
        matches!(self, Error::Format { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
