use thiserror::Error;

/// Errors raised by group, table and class-function computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),
    #[error("point {0} appears more than once in cycle notation")]
    RepeatedPoint(usize),
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("not a character: {0}")]
    NotCharacter(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("empty set of primes")]
    EmptyPrimeSet,
    #[error("value is not rational")]
    NotRational,
    #[error("no split prime below 2^31 for exponent {0}")]
    SplitPrimeOverflow(u64),
    #[error("eigenspace splitting failed: {0}")]
    DegenerateEigenspace(String),
    #[error("invalid table data: {0}")]
    InvalidTable(String),
}

impl Error {
    /// True for resource-limit failures (as opposed to bad input).
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::SplitPrimeOverflow(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
