use thiserror::Error;

/// Failures surfaced by the library. Budget exhaustion is kept distinct
/// so front ends can map it to its own exit status.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("empty set has no cardinality-column rank")]
    EmptySet,

    #[error("set is not strictly increasing at position {0}")]
    NotStrictlyIncreasing(usize),

    #[error("link ({a}, {b}) has an endpoint outside 0..{node_count}")]
    LinkOutOfRange { a: String, b: String, node_count: u64 },

    #[error("duplicate link ({0}, {1})")]
    DuplicateLink(String, String),

    #[error("balance undefined: combinadic rank is zero")]
    ZeroRank,

    #[error("{0} is not a member of {1}")]
    NotAMember(u64, String),

    #[error("search budget of {budget} exhausted before the {wanted}-th element of {set}")]
    SearchExhausted { set: String, wanted: u64, budget: u64 },

    #[error("checkpoint list is empty")]
    NoCheckpoints,

    #[error("checkpoints must be ascending, nonzero and at most {max}")]
    BadCheckpoints { max: u64 },

    #[error("information efficiency undefined: operand is zero")]
    ZeroOperand,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("polynomial value {0} is not positive")]
    NonPositiveValue(String),

    #[error("rejection rate {rate:.3} at t = {t} exceeds 0.9")]
    TooManyRejections { t: u32, rate: f64 },

    #[error("t schedule must be ascending with at least 3 points")]
    BadSchedule,

    #[error("work budget exceeded: {needed} units requested, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("division by the finite term zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::SearchExhausted { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
