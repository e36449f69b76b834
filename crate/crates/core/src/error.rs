use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{m} does not divide {p} - 1")]
    NotDivisor { p: u32, m: u32 },

    #[error("{q} is not a {m}-th power residue modulo {p}")]
    NotResidue { p: u32, m: u32, q: u32 },

    #[error("generator polynomial coefficient at degree {degree} lies outside the base field")]
    CoefficientOutsideBaseField { degree: usize },

    #[error("enumeration needs {required} codewords but the cap is {cap}")]
    CapExceeded { required: u128, cap: u64 },

    #[error("{count} subsets exceed the limit of {limit}")]
    TooManySubsets { count: u128, limit: u128 },

    #[error("the first group is not contained in the second")]
    NotSubgroup,

    #[error("conjugating permutation check failed: {0}")]
    CyclicActionFailed(String),

    #[error("blocks do not all have the same size")]
    NonUniformBlocks,

    #[error("block of size {size} is smaller than t = {t}")]
    BlockSmallerThanT { size: usize, t: usize },

    #[error("conjugate Jacobi sum depends on the choice of T")]
    NotIndependent,

    #[error("the differentiation operator is undefined on degree 0")]
    DegreeZero,

    #[error("group generator {index} is not an automorphism of the block multiset")]
    GroupNotAutomorphism { index: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}
