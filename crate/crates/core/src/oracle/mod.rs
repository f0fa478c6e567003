//! Brute-force and Monte-Carlo references. Slow by design; never used on
//! the solve path.

mod brute;
mod monte_carlo;

pub use brute::{brute_force_solve, GridSpec, OracleSolution};
pub use monte_carlo::{monte_carlo_rate, numeric_concavity_probe, ChannelDraw, RateEstimate};
