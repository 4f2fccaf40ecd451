use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Unsupported type label, quadrature mode, or precondition on a weight.
    #[error("configuration error: {0}")]
    Config(String),
    /// Caller passed something the operation cannot accept.
    #[error("usage error: {0}")]
    Usage(String),
    /// A size cap (dimension, degree) was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The principal symbol of zero has no degree.
    #[error("zero element has no filtration degree")]
    ZeroElement,
    /// A function is not in the symbol algebra at this level.
    #[error("function not in the symbol algebra at level n = {n} (residual {residual:.3e})")]
    NotInAlgebra { n: u32, residual: f64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
