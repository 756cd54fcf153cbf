//! Crate-wide error type.

/// Errors produced by any of the toolkit's operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("f = {f} does not divide p - 1 = {pm1}")]
    BadSubgroupOrder { f: u64, pm1: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("exponent vector must have at least one entry")]
    EmptyExponents,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("input vector is zero")]
    ZeroInput,
    #[error("norm is zero; its logarithm is undefined")]
    DeltaZero,
    #[error("alpha^p = 1 within certification; log|alpha^p - 1| is -inf")]
    PoleAtOne,
    #[error("root finder did not converge at {bits} bits after {iters} iterations")]
    NonConvergence { bits: u32, iters: u32 },
    #[error("cannot certify: {0}")]
    Indeterminate(String),
    #[error("sampling budget {got} is below the minimum {min}")]
    BudgetTooSmall { got: u64, min: u64 },
    #[error("modular prime pool exhausted below the word bound for p = {p}")]
    PrimePoolExhausted { p: u64 },
    #[error("lattice enumeration exceeded its node budget; certified lower bound {bound}")]
    EnumerationBound { bound: u64 },
    #[error("vector does not lie in the subgroup")]
    NotInSubgroup,
    #[error("representatives are not a complete set of distinct cosets")]
    InvalidReps,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of numeric certification (ladder exhausted,
    /// enumeration budget, prime pool), as opposed to bad input.
    pub fn is_certification_failure(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::Indeterminate(_)
                | Error::PrimePoolExhausted { .. }
                | Error::EnumerationBound { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
