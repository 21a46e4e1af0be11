use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("could not completely factor {value}: composite cofactor {cofactor} survived the effort bound")]
    FactorizationIncomplete { value: BigUint, cofactor: BigUint },

    #[error("bp = {bp} does not divide {product}; the boundary is not the standard sphere")]
    BoundaryNotStandardSphere { bp: BigUint, product: BigUint },

    #[error("({two_k})! does not divide {value}")]
    FactorialDivisibility { two_k: u64, value: BigUint },

    #[error("{0} is not divisible by 8, so it is not the square of a characteristic vector")]
    NotCharacteristicSquare(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("parity violation: {0}")]
    ParityViolation(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::FactorizationIncomplete { .. } => "factorization-incomplete",
            Error::BoundaryNotStandardSphere { .. } => "boundary-not-standard-sphere",
            Error::FactorialDivisibility { .. } => "factorial-divisibility",
            Error::NotCharacteristicSquare(_) => "not-characteristic-square",
            Error::HypothesisViolation(_) => "hypothesis-violation",
            Error::ParityViolation(_) => "parity-violation",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
