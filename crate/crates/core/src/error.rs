use thiserror::Error;

/// Maximum number of vertices a [`crate::Graph`] may carry.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    /// The flawless search ran out of budget; `lower_bound` is the best value
    /// certified so far and `undecided_k` the smallest degree above it that
    /// could not be settled.
    #[error("budget exceeded while searching f({n}): lower bound {lower_bound}, undecided k = {undecided_k}")]
    FlawlessBudget {
        n: usize,
        lower_bound: usize,
        undecided_k: usize,
    },

    #[error("uniformity mismatch: family is {family}-uniform, spec expects {spec}")]
    UniformityMismatch { family: usize, spec: usize },

    #[error("empty family")]
    EmptyFamily,

    #[error("not a valid 1-factorization: {0}")]
    InvalidFactorization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
