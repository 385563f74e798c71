use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (Im tau <= 0, |q| >= 1, w = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation was requested within the pole tolerance of a pole.
    #[error("pole: |1 - w q^{index}| = {distance:e} is below the pole tolerance")]
    Pole { index: i64, distance: f64 },

    /// The requested tolerance cannot be met within the term budget.
    #[error("non-convergence: tolerance {tol:e} not reached within {max_terms} terms")]
    NonConvergence { tol: f64, max_terms: usize },

    /// A continuation path is degenerate or does not start where it claims to.
    #[error("invalid continuation: {0}")]
    InvalidContinuation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
