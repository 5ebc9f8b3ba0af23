use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("quotient ring is not a field: {zero_divisor} is a zero divisor")]
    NotAField { zero_divisor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field spec {spec:?}: {reason}")]
    BadFieldSpec { spec: String, reason: String },
    #[error("invalid scalar literal {literal:?}: {reason}")]
    BadScalar { literal: String, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("scalar cannot be mapped into {target}: {reason}")]
    NoHomomorphism { target: String, reason: String },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}
