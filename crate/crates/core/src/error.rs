use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("substitution expects {expected} images, got {got}")]
    Arity { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("slope list is empty")]
    Empty,
    #[error("a plumbing needs at least two slopes (n >= 1); got a single slope")]
    SingleSlope,
    #[error("slope {index} violates the k = 1 or l = 1 condition: (k, l) = ({k}, {l})")]
    SlopeCondition { index: usize, k: u32, l: u32 },
    #[error("truncation degree must be at least 1")]
    ZeroTruncation,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl SpecError {
    /// Stable machine-readable code for reports and exit handling.
    pub fn code(&self) -> &'static str {
        match self {
            SpecError::Empty => "empty-slopes",
            SpecError::SingleSlope => "n-zero",
            SpecError::SlopeCondition { .. } => "slope-condition",
            SpecError::ZeroTruncation => "truncation",
            SpecError::Field(_) => "field",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("arrow {0} has an endpoint outside the vertex set")]
    BadArrow(String),
    #[error("duplicate arrow name {0}")]
    DuplicateArrow(String),
    #[error("rewrite system is not confluent on the overlap {0}")]
    NotConfluent(String),
    #[error("base change needs {expected} factors, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("path is not composable")]
    NotComposable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("free generator {gen} out of range for rank {rank}")]
    FreeGeneratorOutOfRange { gen: usize, rank: usize },
    #[error("rho lift fails the conjugation relation at sigma_{0}")]
    RhoLiftFailed(usize),
    #[error("n must be at least 1")]
    TooSmall,
}
