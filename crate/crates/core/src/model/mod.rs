//! Domain types, the rate model, energy accounting and the constraint system.

mod energy;
mod feasibility;
mod params;
mod rate;
mod schedule;
mod timeline;

pub use energy::{spectral_efficiency, weighted_ee, weighted_energy};
pub(crate) use energy::weighted_power;
pub use feasibility::{check_feasibility, Constraint, ConstraintStatus, FeasibilityReport, FEASIBILITY_TOL};
pub use params::{dbm_to_watts, OverflowRule, SystemParams};
pub(crate) use rate::mean_rate_unchecked;
pub use rate::{array_gain, mean_rate, rate_variance, water_floor};
pub use schedule::{EpochAllocation, PowerSplit, Schedule};
pub use timeline::EpochTimeline;
