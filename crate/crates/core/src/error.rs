use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenPrimeUnsupported,
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero field element is required")]
    ZeroInput,
    #[error("n = {n} is not coprime to p = {p}")]
    NotCoprimeToP { n: usize, p: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("invalid ideal descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("polynomial degree {deg} exceeds bound {bound}")]
    DegreeOverflow { deg: usize, bound: usize },
    #[error("guard exceeded: {0}")]
    TooLarge(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
