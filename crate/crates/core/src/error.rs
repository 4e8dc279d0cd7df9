use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristic must be 0 or a prime below 2^32, got {0}")]
    InvalidCharacteristic(u64),

    #[error("coefficient {0} is not defined modulo {1}")]
    CoefficientNotInField(String, u64),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("power vector {0:?} is not sorted in descending order")]
    UnsortedPowerVector(Vec<u32>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size guard: {what} = {value} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("timeout after {0} s")]
    Timeout(u64),

    #[error("terms {0} and {1} are not in the same equivalence class")]
    MixedClasses(String, String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("canonical form defect: term {0} is not canonical after reduction")]
    CanonicalDefect(String),
}

impl Error {
    /// Guard breaches and timeouts are runtime conditions; everything else
    /// is a malformed request.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::Timeout(_))
    }
}
