use num_bigint::BigUint;
use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(BigUint),

    #[error("{q} is not a prime power")]
    NotPrimePower { q: BigUint },

    #[error("{r} divides {q}")]
    NotCoprime { q: BigUint, r: BigUint },

    /// Raised instead of guessing when the splitter runs out of budget.
    #[error("factorization incomplete: cofactor {cofactor} resisted splitting")]
    IncompleteFactorization { cofactor: BigUint },

    #[error("{group} is not a valid group: requires {condition}")]
    InvalidGroup {
        group: String,
        condition: &'static str,
    },

    #[error("{0} is not defined for alternating groups")]
    Alternating(&'static str),

    #[error("the Tits group 2F4(2)' has no cyclotomic factorization of its own order")]
    TitsGroup,

    #[error("{r} does not divide |{group}| (trivial Sylow subgroup)")]
    TrivialSylow { group: String, r: BigUint },

    #[error("{r} is the defining characteristic of {group}")]
    Characteristic { group: String, r: BigUint },

    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
