use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: u64, k: u64 },

    #[error("digit {digit} is outside [0, {p})")]
    DigitOutOfRange { digit: u64, p: u64 },

    /// A predictor or check was called outside the hypotheses it is valid for.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },

    #[error("table too short: {0}")]
    TableTooShort(String),

    /// Raised by table building when the configured bit budget runs out.
    /// Kept apart from mathematical errors so callers can retry with a bigger cap.
    #[error("resource budget exceeded: {used} bits > cap {cap}")]
    BudgetExceeded { used: u64, cap: u64 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
