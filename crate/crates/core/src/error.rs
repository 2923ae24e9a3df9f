//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate body: {0}")]
    Degenerate(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("dimension {n} over budget (max {max}) for {what}")]
    DimensionOverBudget {
        n: usize,
        max: usize,
        what: &'static str,
    },

    #[error("singular matrix in {0}")]
    Singular(&'static str),

    #[error("ellipsoid iteration did not converge within {cap} steps (eps too small?)")]
    NonConvergence { cap: usize },

    #[error("iteration cap hit in {0}")]
    IterationCap(&'static str),

    #[error("body is not unconditional")]
    NotUnconditional,

    #[error(
        "lambda_n(K, Z^n) = {lambda_n} > 1: K has no n independent lattice points; \
         restrict to the lattice-spanning subspace (or scale with --unimodularize)"
    )]
    LambdaTooLarge { lambda_n: String },

    #[error("representation unavailable: {0}")]
    MissingRepresentation(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("malformed input: field `{field}`: {message}")]
    MalformedInput { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code classification: 1 = budget/feasibility/input trouble,
    /// 2 = invariant violation (a bug signal).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantViolation(_) => 2,
            _ => 1,
        }
    }
}
