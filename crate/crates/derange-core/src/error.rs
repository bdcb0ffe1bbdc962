//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle notation parse error: {0}")]
    Parse(String),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("closure cap {cap} exceeded: at least {reached} elements enumerated")]
    ClosureCapExceeded { cap: usize, reached: usize },

    #[error("tuple budget exceeded: domain has {required} tuples, budget is {budget}")]
    TupleBudgetExceeded { required: u128, budget: u64 },

    #[error("automorphism search budget exceeded: {candidates} candidate tuples, budget {budget}")]
    AutBudgetExceeded { candidates: u128, budget: u64 },

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("generators of the claimed subgroup are not all members of the ambient group")]
    NotSubgroup,

    #[error("operation requires a nontrivial group")]
    TrivialGroup,

    #[error("operation requires a transitive group")]
    Intransitive,

    #[error("the two points must be distinct")]
    SamePoint,

    #[error("group is not regular on its points")]
    NotRegular,

    #[error("element does not normalize the subgroup")]
    DoesNotNormalize,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {0} out of supported range")]
    FieldTooLarge(u64),

    #[error("spectrum inconsistency: sum over the coset for k={k} is {numerator}, not divisible by |G|={order}")]
    NonIntegralRk { k: usize, numerator: u128, order: u64 },

    #[error("equivalence violation: {0}")]
    EquivalenceViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group file error{}: {msg}", record.map(|r| format!(" in record {r}")).unwrap_or_default())]
    Ingest { record: Option<usize>, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
