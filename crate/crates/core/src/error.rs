use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MzvError {
    #[error("series is zero to precision {0}")]
    ZeroToPrecision(i128),
    #[error("derivative is not a unit at the seed")]
    NonUnitDerivative,
    #[error("newton iteration stalled at residual valuation {0}")]
    NoConvergence(i128),
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("zero element has no degree or sign")]
    ZeroElement,
    #[error("requested precision {0} is too small")]
    PrecisionTooSmall(i128),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    EnumerationCapExceeded { size: u128, cap: u128 },
    #[error("skew series has a non-invertible constant term")]
    NonUnitConstantTerm,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation overflow")]
    ValuationOverflow,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, MzvError>;
