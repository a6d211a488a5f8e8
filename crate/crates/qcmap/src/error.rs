//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QcError {
    /// A point lies outside the domain of the requested map.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter fails validation (K < 1, R ≤ 1, ‖μ‖∞ ≥ 1, bad grid, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The Neumann iteration hit its cap before the stopping tolerance.
    #[error("solver did not converge: {iterations} iterations, last step {last_step:.3e}")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A field dump or config file failed to parse.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, QcError>;
