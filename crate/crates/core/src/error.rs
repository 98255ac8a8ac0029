use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("circuit powers need n >= 3, got n = {0}")]
    OrderTooSmall(usize),
    #[error("order n = {0} exceeds the supported bound 2^31")]
    OrderTooLarge(usize),
    #[error("distance-power exponent must be at least 1, got d = {0}")]
    ExponentTooSmall(usize),
    #[error("invalid jump set for n = {n}: {reason}")]
    InvalidJumpSet { n: usize, reason: String },
    #[error("C_{n}^({d}) is the complete graph K_{n}; the multiplicity theorems only cover non-complete powers")]
    CompleteGraph { n: usize, d: usize },
    #[error("the eigenvalue -2 theorem requires d > 1; use the cycle special case for d = 1")]
    RequiresDGreaterThanOne,
    #[error("eigenvalue {eigenvalue} is absent from C_{n}^({d})")]
    EigenvalueAbsent { n: usize, d: usize, eigenvalue: i64 },
    #[error("{eigenvalue} is not an integer eigenvalue candidate of C_{n}^({d})")]
    NotACandidate { n: usize, d: usize, eigenvalue: i64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("ord_p(n) needs n >= 1")]
    ZeroValuation,
    #[error("matrix is not symmetric (first mismatch at ({0}, {1}))")]
    NotSymmetric(usize, usize),
    #[error("matrix order {n} exceeds the dense solver cap {cap}")]
    MatrixTooLarge { n: usize, cap: usize },
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("case analysis for C_{n}^({d}): {reason}")]
    InconsistentCases { n: usize, d: usize, reason: String },
    #[error("constructed basis for eigenvalue {eigenvalue} of C_{n}^({d}) failed certification: {reason}")]
    BasisCertification { n: usize, d: usize, eigenvalue: i64, reason: String },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
}
