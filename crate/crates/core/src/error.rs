use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: 2^{left} vs 2^{right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bit pattern is not in the image of the Gray map")]
    NotInImage,
    #[error("budget exceeded: {what} needs {needed}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("coordinate index {index} out of range 1..={len}")]
    InvalidIndex { index: usize, len: usize },
    #[error("binary code is not linear")]
    NotLinear,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
