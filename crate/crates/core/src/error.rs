use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("power series has a zero constant term and no reciprocal")]
    NonInvertibleSeries,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error(
        "underdetermined system: column {column} has no pivot (add data or constrain the basis)"
    )]
    Underdetermined { column: usize },

    #[error("system needs at least as many rows ({rows}) as columns ({columns})")]
    TooFewRows { rows: usize, columns: usize },

    #[error("({s},{t}) is not a valid pair: s and t must be distinct, relatively prime positive integers")]
    NotCoprime { s: u32, t: u32 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid beta-set: {0}")]
    InvalidBetaSet(String),

    #[error("generating polynomial sums to zero at q=1")]
    ZeroTotal,

    #[error("degenerate distribution: the variance is zero")]
    DegenerateVariance,

    #[error("theorem {0} does not exist (valid ids are 1..=9)")]
    UnknownTheorem(u8),

    #[error("pair ({s},{t}) is outside the domain of theorem {id}, which needs t = s + 1")]
    TheoremDomain { id: u8, s: u32, t: u32 },

    #[error("unsupported moment order {order}: {reason}")]
    UnsupportedOrder { order: usize, reason: String },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error(
        "ansatz violated at degree bound {degree}: data point {index} ({s},{t}) is inconsistent"
    )]
    AnsatzViolated {
        degree: u32,
        index: usize,
        s: u32,
        t: u32,
    },

    #[error("insufficient data: {have} points for a basis of {basis} (need at least {need})")]
    InsufficientData {
        have: usize,
        basis: usize,
        need: usize,
    },

    #[error("invalid fit: {0}")]
    InvalidFit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
