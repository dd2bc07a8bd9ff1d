use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field configuration: {0}")]
    InvalidField(String),
    #[error("mismatched fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    Inexact(String),
    #[error("ramification budget exceeded: denominator {needed} > cap {cap}")]
    RamificationBudget { needed: u64, cap: u64 },
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
