use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no directed cycle, so it carries no invariant measure")]
    NoCycle,
    #[error("malformed edge: {0}")]
    MalformedEdge(String),
    #[error("not a measure: {0}")]
    NotAMeasure(String),
    #[error("not a simple cycle: {0}")]
    NotASimpleCycle(String),
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid block table: {0}")]
    InvalidBlockTable(String),
    #[error("simple cycle count exceeds the budget of {cap}")]
    CycleBudgetExceeded { cap: usize },
    #[error("potential has a unique maximizing measure")]
    UniqueInput,
    #[error("no unique potential found after {draws} draws")]
    RetryBudgetExceeded { draws: usize },
    #[error("perturbation radius {delta} is not below half the gap {gap}")]
    GapViolation { delta: String, gap: String },
    #[error("every simple cycle is critical, so the gap is undefined")]
    GapUndefined,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("internal check failed: {0}")]
    Internal(String),
}
