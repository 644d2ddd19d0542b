use crate::series::Basis;

/// Errors raised by series arithmetic, approximant construction and verification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: String, found: Basis },

    #[error("division by a series whose constant term is zero")]
    DivisionByNonUnit,

    #[error("x = {0} lies outside [-1, 1]")]
    Domain(f64),

    #[error("series {function} has {have} coefficients, at least {need} are required")]
    Length { function: usize, have: usize, need: usize },

    #[error("degenerate determinant system: {0}")]
    Degenerate(String),

    #[error("contract violated for function {function}: coefficient {index} is {value}")]
    ContractViolation { function: usize, index: usize, value: String },

    #[error("multi-index outside the upper table: n = {n} < max m_j = {max_m}")]
    UpperTable { n: usize, max_m: usize },

    #[error("denominator vanishes on [-1, 1]")]
    PoleOnSegment,

    #[error("approximant kind mismatch: expected {expected}")]
    KindMismatch { expected: &'static str },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
