use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("root finder did not converge after {iterations} iterations (max correction {max_correction:e})")]
    NonConvergence { iterations: u32, max_correction: f64 },

    #[error("indeterminate classification: {0}")]
    Indeterminate(String),

    #[error("sampler starved: acceptance rate {rate:e} after {attempts} attempts ({detail})")]
    Starvation {
        rate: f64,
        attempts: u64,
        detail: String,
    },

    #[error("search space of ~{estimate:e} nodes exceeds the budget of {budget:e}")]
    BudgetExceeded { estimate: f64, budget: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
