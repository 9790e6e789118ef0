use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at u=1")]
    PoleAtOne,
    #[error("q-integer base exponent must be nonzero")]
    ZeroBase,
    #[error("q-binomial index out of range: r = {r}, m = {m}")]
    BinomialRange { m: i64, r: i64 },
    #[error("series operand has a non-invertible leading term")]
    NotInvertible,
    #[error("coefficient at exponent {exponent} requested at or beyond truncation order {order}")]
    BeyondTruncation { exponent: String, order: String },
    #[error("q-deformed power needs a positive truncation order")]
    NonPositiveOrder,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("lattice label violates the Fock constraint: {0}")]
    ConstraintViolation(String),
    #[error("vector is not homogeneous for {0}")]
    NotHomogeneous(&'static str),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
