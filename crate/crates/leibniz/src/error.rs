use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a complex at degree {degree}: consecutive differentials do not compose to zero")]
    NotAComplex { degree: usize },

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("not a Lie algebra: {0}")]
    NotLie(String),

    #[error("not a valid module: {0}")]
    InvalidModule(String),

    #[error("not a valid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),

    #[error("equivariance check failed: {0}")]
    EquivarianceFailure(String),

    #[error("induced action check failed: {0}")]
    InducedActionFailure(String),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
