//! Weighted energy-efficiency maximisation.
//!
//! [`dinkelbach_solve`] turns the fractional objective into a sequence of
//! problems `max U_SE − q·E_W`. Each is solved by dual ascent on the battery
//! multipliers; for fixed multipliers the problem separates by epoch, and
//! each epoch is solved exactly by a scan over antenna counts with a
//! closed-form water-filling power for each count. A forward restoration
//! pass turns each dual iterate into a schedule the battery can serve.

mod antennas;
mod dinkelbach;
mod inner;
mod kkt;
mod multipliers;
mod options;
mod qos;
mod report;
mod target;

pub use antennas::select_antennas;
pub use dinkelbach::{baseline_full_array, baseline_full_array_with, dinkelbach_solve, DinkelbachState, SolveReport};
pub use inner::{inner_solve, InnerSolution};
pub use kkt::{kkt_power_update, water_filling_split, water_levels, BatteryContext, EpochDecision, EpochPrices};
pub use multipliers::{update_multipliers, BatteryConstraints, Multipliers, Residuals, StepSchedule, Window};
pub use options::{AntennaPolicy, SolveOptions};
pub use qos::qos_bisection;
pub use report::write_report;
pub use target::{min_energy_for_se, TargetSolution};
