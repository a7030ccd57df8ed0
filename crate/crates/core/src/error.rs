use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level must be a positive integer")]
    ZeroLevel,

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("sign vector has length {got}, expected {expected}")]
    SignLength { expected: usize, got: usize },

    #[error("N = {0} is squarefree and all signs are +1; C0 has degree 2^t and E0 is not a modular form")]
    AllPlusSquarefree(u64),

    #[error("atkin-lehner index {index} out of range (t = {t})")]
    AtkinLehnerIndex { index: usize, t: usize },

    #[error("the square of {prime} divides {n}; the involution is only defined for primes exactly dividing N")]
    NotExactDivisor { prime: u64, n: u64 },

    #[error("divisor vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero divisor has no Gcd")]
    ZeroDivisor,

    #[error("series truncated at {have} terms cannot give any coefficient of T_{prime}")]
    InsufficientTruncation { prime: u64, have: usize },

    #[error("prime {prime} divides the level {n}")]
    PrimeDividesLevel { prime: u64, n: u64 },

    #[error("prime {prime} does not divide the level {n}")]
    PrimeDoesNotDivideLevel { prime: u64, n: u64 },

    #[error("N = {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("N = {0} is squarefree; the non-squarefree index needs N2 > 1")]
    Squarefree(u64),

    #[error("p = 2 is not allowed: the index theorems hold for odd primes only")]
    EvenPrime,
}

pub type Result<T> = std::result::Result<T, Error>;
