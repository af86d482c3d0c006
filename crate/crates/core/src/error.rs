use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters outside the family of networks the formulas describe.
    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error(
        "Chebyshev {kind}_{index}({x}) exceeds 1e300 in magnitude; \
         the parameters are outside double-precision range"
    )]
    Overflow { kind: char, index: i64, x: f64 },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vertex {index} out of range for a network on {order} vertices")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("group-inverse axiom violated: {0}")]
    AxiomViolation(String),

    #[error("no candidate reading of `{0}` matches the reference over the sweep")]
    Unresolved(String),

    #[error("the reconciliation sweep has not run yet")]
    NotReconciled,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot write output: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a
    /// computation that went wrong.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::IndexOutOfRange { .. } | Error::Precondition(_)
        )
    }
}
