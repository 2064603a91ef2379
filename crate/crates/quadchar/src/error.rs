use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NonOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the two quadratic extensions coincide")]
    SameExtension,
    #[error("quadratic extensions live over different base fields")]
    BaseMismatch,
    #[error("the trivial square class does not define a quadratic extension")]
    TrivialClass,
    #[error("diamond does not match the required ramification pattern: {0}")]
    PatternMismatch(&'static str),
    #[error("lambda constant of a ramified step is not available")]
    RamifiedLambda,
    #[error("zero is not a unit")]
    ZeroUnit,
    #[error("element does not have norm one")]
    NotNormOne,
    #[error("field size {0} exceeds the supported bound")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("generator matrix is not invertible over the integers")]
    NonInvertible,
    #[error("generator matrices violate the declared group relations")]
    BadRelations,
    #[error("malformed torus tower: {0}")]
    MalformedTower(&'static str),
    #[error("torus is outside the supported catalog")]
    Unsupported,
    #[error("group action does not preserve the root set")]
    NotClosed,
    #[error("inconsistent field realization: {0}")]
    InconsistentRealization(&'static str),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
