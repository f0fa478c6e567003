//! Energy-arrival timelines and battery simulation.

mod arrivals;
mod battery;
pub mod csv;

pub use arrivals::{generate_timeline, timeline_from_arrivals, AmountModel, ArrivalModel};
pub use battery::{battery_trajectory, BatteryTrajectory, EpochLedger};
