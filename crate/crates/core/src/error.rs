use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs that do not fit together (variable lists, dangling labels, open paths).
    #[error("structural error: {0}")]
    Structural(String),
    /// A point outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator vanished at an evaluation point.
    #[error("wall crossed: {0}")]
    Wall(String),
    /// Path passes too close to the origin.
    #[error("singularity: {0}")]
    Singularity(String),
    /// Evaluation on the branch cut of the n-th root.
    #[error("branch cut: {0}")]
    Branch(String),
    /// The coboundary does not square to zero at the requested point.
    #[error("inconsistent complex: {0}")]
    Inconsistent(String),
    #[error("fixture generation failed: {0}")]
    Generation(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
