use thiserror::Error;

/// Errors raised by family construction, search and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set [1, {n}]")]
    ElementOutOfRange { element: i64, n: u32 },
    #[error("set has {found} elements, expected {expected}")]
    WrongSetSize { expected: u32, found: usize },
    #[error("duplicate set {0:?}")]
    DuplicateSet(Vec<u32>),
    #[error("not a permutation of [1, {0}]")]
    NotAPermutation(u32),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("family is not ({s},{t})-union intersecting")]
    NotUnionIntersecting { s: usize, t: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("proved statement violated: {0}")]
    TheoremViolation(String),
    #[error("family is empty")]
    EmptyFamily,
    #[error("anchor violation: {0}")]
    AnchorViolation(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("more than {0} results")]
    LimitExceeded(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
