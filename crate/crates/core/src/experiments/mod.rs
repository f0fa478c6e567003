//! Scenario loading and the parameter sweeps.

mod config;
mod output;
mod sweeps;

pub use config::{ScenarioConfig, SweepKind, SweepRange, TimelineSource};
pub use output::{run, write_meta, write_outputs, write_table, RunOutput};
pub use sweeps::{
    map_points, run_ee_se_tradeoff, run_ee_vs_capacity, run_ee_vs_m, run_single, CapacityRow, EeVsMRow, Point, Status,
    Table, TradeoffRow,
};
