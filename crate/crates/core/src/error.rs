use thiserror::Error;

/// Errors raised across the library.
///
/// `Invariant` is reserved for violations of facts the theory guarantees
/// (uniqueness of subpairs, antisymmetry, EI). It always carries a
/// human-readable witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field GF({p}^{d}) exceeds the supported size")]
    FieldTooLarge { p: u32, d: u32 },
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group enumeration exceeded the bound of {0} elements")]
    GroupTooLarge(usize),
    #[error("element is not in the group: {0}")]
    NotInGroup(String),
    #[error("algebra element is not fixed by {0}")]
    NotFixed(String),
    #[error("subgroups do not commute: {0} and {1}")]
    NotCommuting(String, String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("brute-force search space {size} exceeds bound {bound}")]
    OracleBound { size: u128, bound: u128 },
    #[error("enumeration exceeded the cap of {0} {1}")]
    TooMany(usize, &'static str),
    #[error("invariant violated ({what}): {witness}")]
    Invariant { what: &'static str, witness: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(what: &'static str, witness: impl Into<String>) -> Error {
    Error::Invariant {
        what,
        witness: witness.into(),
    }
}
