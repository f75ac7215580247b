use thiserror::Error;

/// Errors raised by constructors and validated operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("weight {weight} is not coprime to {k}")]
    WeightNotCoprime { weight: i64, k: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("window endpoint {0} is a critical value")]
    CriticalEndpoint(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse '{0}' as a rational number")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
