//! Energy-efficient antenna selection and hybrid (renewable + grid) power
//! allocation for a large-antenna base station over a horizon of
//! energy-harvesting epochs.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`] holds the domain types and evaluates rates, energy, weighted
//!   energy efficiency and the nine-constraint feasibility system.
//! - [`harvest`] generates energy-arrival timelines and simulates the battery.
//! - [`solver`] maximises weighted energy efficiency: a Dinkelbach outer loop
//!   around a Lagrangian-dual inner solver with water-filling power updates and
//!   an exhaustive per-epoch antenna scan.
//! - [`oracle`] contains brute-force and Monte-Carlo references used to
//!   validate the solver and the rate model.
//! - [`experiments`] loads scenario files and runs the parameter sweeps.

pub mod error;
pub mod experiments;
pub mod harvest;
pub mod model;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};
pub use harvest::{battery_trajectory, generate_timeline, AmountModel, ArrivalModel, BatteryTrajectory};
pub use model::{
    check_feasibility, mean_rate, rate_variance, spectral_efficiency, weighted_ee, weighted_energy,
    EpochAllocation, EpochTimeline, FeasibilityReport, OverflowRule, PowerSplit, Schedule,
    SystemParams,
};
pub use solver::{baseline_full_array, dinkelbach_solve, AntennaPolicy, SolveOptions, SolveReport};
