use thiserror::Error;

use crate::solver::SolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("epoch count mismatch: schedule has {schedule} epochs, timeline has {timeline}")]
    LengthMismatch { schedule: usize, timeline: usize },

    #[error("total weighted energy is zero")]
    ZeroEnergy,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid timeline: {0}")]
    InvalidTimeline(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Iteration budget exhausted; the report carries the best iterate.
    #[error("not converged after {iterations} iterations")]
    NotConverged {
        iterations: usize,
        report: Box<SolveReport>,
    },

    #[error("enumeration budget exceeded: {points:.3e} grid points > {budget:.3e}")]
    BudgetExceeded { points: f64, budget: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
