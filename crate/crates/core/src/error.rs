use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient overflow")]
    Overflow,
    #[error("series constant term {0} is not a unit")]
    NonUnitConstant(i128),
    #[error("order {requested} exceeds the known order {available}")]
    OrderExceeded { requested: usize, available: usize },
    #[error("polynomial has negative support (min exponent {min_exp})")]
    NegativeSupport { min_exp: i64 },
    #[error("enumeration too large: window {span} exceeds cap {cap} (raise --cap)")]
    EnumerationTooLarge { span: i64, cap: i64 },
    #[error("state space exceeds cap {cap}")]
    StateSpaceTooLarge { cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
