use thiserror::Error;

/// Errors raised by library operations.
///
/// Variants split into two families: domain errors (bad input, violated
/// preconditions) and budget errors (a configured size or effort cap was
/// hit). [`Error::is_budget`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero value at position {0}")]
    ZeroValue(usize),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("polynomial is {0}")]
    Degenerate(&'static str),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("identity failed: {0}")]
    IdentityFailed(String),

    #[error("value does not fit in a machine integer: {0}")]
    Overflow(String),

    #[error("orbit value {index} would exceed the size cap of {cap_bits} bits")]
    SizeCap { index: usize, cap_bits: u64 },

    #[error("work budget exceeded; largest feasible N is {largest_feasible}")]
    BudgetExceeded { largest_feasible: usize },

    #[error("effort exhausted: {0}")]
    EffortExhausted(String),
}

impl Error {
    /// True when the error comes from a size, effort or work budget rather
    /// than from the input itself.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SizeCap { .. } | Error::BudgetExceeded { .. } | Error::EffortExhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
