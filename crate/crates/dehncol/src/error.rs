use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid PD code: {0}")]
    InvalidPd(String),

    #[error("diagram is not planar: {0}")]
    NonPlanar(String),

    #[error("diagram is not a single knot component: {0}")]
    NotAKnot(String),

    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: needs {needed} but budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed(_) => 1,
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}
