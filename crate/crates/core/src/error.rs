use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("d = {d} is not squarefree: {factor}^2 divides it")]
    NotSquarefree { d: i64, factor: i64 },

    #[error("d = {0} does not define a quadratic field (need d squarefree, d not in {{0, 1}})")]
    InvalidDiscriminant(i64),

    #[error("{0} is not a rational prime")]
    NotPrime(u64),

    #[error("ideal {0} is not prime")]
    NotPrimeIdeal(String),

    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("the unit ideal (1) is not allowed here")]
    UnitIdeal,

    #[error("lattice {0} is not an ideal (not closed under multiplication by w)")]
    NotAnIdeal(String),

    #[error("ideals {a} and {b} are not coprime: their sum is {common}")]
    NotCoprime { a: String, b: String, common: String },

    #[error("modulus {small} does not divide {big}")]
    NotDivisible { small: String, big: String },

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity { what: &'static str, needed: u128, limit: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), reason: reason.into() }
    }
}
