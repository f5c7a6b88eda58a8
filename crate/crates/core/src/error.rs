use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} coordinates for this basis, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("values live in different bases")]
    BasisMismatch,
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("enclosures could not separate the value from its comparand within {digits} digits")]
    PrecisionExhausted { digits: u32 },
    #[error("input is rational")]
    RationalInput,
    #[error("operation needs a quadratic or rational basis")]
    FormalBasisUnsupported,
    #[error("result is not representable in the formal basis")]
    NotRepresentable,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole hit: the image is the point at infinity")]
    PoleHit,
    #[error("matrix entries are not coprime")]
    NotCoprime,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has non-integer entries")]
    NonIntegerMatrix,
    #[error("stabilizer combination is singular")]
    SingularResult,
    #[error("parameters do not define a factor: {0}")]
    NotAFactor(String),
    #[error("permutation is not a bijection of 1..d")]
    NotBijection,
    #[error("length {index} is not positive")]
    NonPositiveLength { index: usize },
    #[error("point lies outside the domain (0, L]")]
    OutOfDomain,
    #[error("Keane condition violated: {0}")]
    KeaneViolation(String),
    #[error("cylinder of the requested word is empty")]
    EmptyCylinder,
    #[error("iteration cap {cap} exceeded")]
    IterationCapExceeded { cap: usize },
    #[error("invalid continued fraction: {0}")]
    InvalidDigits(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
