use thiserror::Error;

#[derive(Debug, Error)]
pub enum SlcError {
    /// Malformed model data: wrong row length, non-finite number, empty job set.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The linear system admits no nonnegative solution.
    #[error("constraint system is infeasible")]
    Infeasible,

    /// The simplex engine could not make progress (tiny pivots or iteration cap).
    #[error("LP solver failure: {0}")]
    SolverFailure(String),

    /// A structural property the algorithms rely on did not hold. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("dual certificate rejected: {0}")]
    CertificateMismatch(String),

    #[error("work budget exceeded: {required} iterations required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SlcError>;
