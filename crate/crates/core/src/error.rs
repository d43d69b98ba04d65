use thiserror::Error;

/// Errors produced by constructors and analyses.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A builder specification failed validation.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// A function evaluation produced a non-finite value.
    #[error("evaluation failed at {point}: produced {value}")]
    Evaluation { point: f64, value: f64 },

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A cut does not attain the required value, so no partner element
    /// exists (the operator is not in the horizontally-cut class at this
    /// point).
    #[error("no inverse: {0}")]
    NoInverse(String),

    /// An unknown catalog instance or named operator was requested.
    #[error("not found: {0}")]
    NotFound(String),
}
