use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus {0:?} is reducible over F_p")]
    ReducibleModulus(Vec<u32>),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("element index {0} outside the field")]
    ElementOutOfRange(u32),
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("{what} count {count} exceeds cap {cap}")]
    CapExceeded { what: &'static str, count: u128, cap: u128 },
    #[error("identical points do not span a line")]
    EqualPoints,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("point index {index} out of range for {points} points")]
    PointOutOfRange { index: usize, points: usize },
    #[error("multiplicity {mult} at point {point} is not in 1..={max}")]
    BadMultiplicity { point: usize, mult: u64, max: u32 },
    #[error("empty multiset")]
    EmptyMultiset,
    #[error("degenerate multiplicity t = {t}; need 1 <= t <= p-1 = {max}")]
    DegenerateT { t: u32, max: u32 },
    #[error("rank mismatch: expected {expected}, got {actual}")]
    RankMismatch { expected: usize, actual: usize },
    #[error("the symmetric difference of the two linear sets is empty")]
    DegenerateSymmetricDifference,
    #[error("zero map")]
    ZeroMap,
    #[error("scalar {0} is divisible by p")]
    ZeroScalar(i64),
    #[error("dual code has p^{dual_dim} codewords, above the budget of {budget}")]
    BudgetExceeded { dual_dim: usize, budget: u128 },
    #[error("point is not in the multiset")]
    NotInSupport,
    #[error("no hyperplane disjoint from the multiset")]
    NoDisjointHyperplane,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
