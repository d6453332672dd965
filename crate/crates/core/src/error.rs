use thiserror::Error;

/// Errors raised across field construction, code building and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("field of order {p}^{degree} exceeds the 2^24 limit")]
    FieldTooLarge { p: u64, degree: usize },
    #[error("gcd({s}, {n}) != 1")]
    GcdViolation { s: i64, n: u32 },
    #[error("{l} does not divide {n}")]
    NotADivisor { l: u32, n: u32 },
    #[error("basis is not F_q-linearly independent")]
    DependentBasis,
    #[error("elements are not F_q-linearly independent")]
    DependentSet,
    #[error("subspace of dimension {m} does not fit in F_q^{n}")]
    TooLarge { m: usize, n: u32 },
    #[error("operands live over different fields")]
    SpecMismatch,
    #[error("norm condition violated: N(eta) = {norm:?} equals (-1)^(nk)")]
    NormConditionViolated { norm: Vec<u32> },
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("dimension collapse: expected {expected}, got {got}")]
    DimensionCollapse { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{what}: {count} exceeds enumeration limit {limit}")]
    TooLargeToEnumerate { what: String, count: u128, limit: u64 },
    #[error("matrix A is singular")]
    SingularA,
    #[error("matrix B is singular")]
    SingularB,
    #[error("adjoint requires m = n")]
    NotSquare,
    #[error("a nonzero translation does not give a linear code")]
    TranslationBreaksLinearity,
    #[error("hypotheses not met: {0:?}")]
    HypothesisNotMet(Vec<String>),
    #[error("1 is not the first element of S and normalization is disabled")]
    OneNotInS,
    #[error("right nucleus is not expressible as sum of c_i X^(q^(i*l))")]
    AnsatzMismatch,
    #[error("no non-square exists in a field of characteristic 2")]
    NoNonSquare,
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by an enumeration or size guard.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::TooLargeToEnumerate { .. } | Error::FieldTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
