//! Browser bindings for the three interactive plots of the demo page.
//! Every function returns a flat `Float64Array`; infeasible points are NaN.

use hybrid_ee::experiments::{run_ee_se_tradeoff, run_ee_vs_capacity, run_ee_vs_m, ScenarioConfig, SweepKind, SweepRange, TimelineSource};
use hybrid_ee::{OverflowRule, SolveOptions, SystemParams};
use wasm_bindgen::prelude::*;

fn two_arrivals(amount: f64) -> TimelineSource {
    TimelineSource::Explicit {
        initial_energy: 0.0,
        arrivals: vec![(0.0, amount), (4.0, amount)],
    }
}

fn scenario(sweep: SweepKind, params: SystemParams, timeline: TimelineSource, range: SweepRange, series: Vec<f64>) -> ScenarioConfig {
    ScenarioConfig {
        sweep,
        params,
        timeline,
        range: Some(range),
        series,
        output: None,
        seed: 0,
        solver: SolveOptions {
            dual_iterations: 200,
            bisection_iterations: 30,
            ..SolveOptions::default()
        },
    }
}

fn or_nan(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

/// Weighted EE for every fixed antenna count `1..=100`, single arrival of
/// `energy_j` at the start of a `horizon_s` window.
#[wasm_bindgen]
pub fn ee_vs_antennas(p_rf_mw: f64, energy_j: f64, horizon_s: f64) -> Vec<f64> {
    let params = SystemParams {
        p_rf: p_rf_mw / 1000.0,
        horizon: horizon_s,
        ..SystemParams::default()
    };
    let c = scenario(
        SweepKind::EeVsM,
        params,
        TimelineSource::Explicit {
            initial_energy: 0.0,
            arrivals: vec![(0.0, energy_j)],
        },
        SweepRange {
            start: 1.0,
            stop: 100.0,
            step: 1.0,
        },
        Vec::new(),
    );
    match run_ee_vs_m(&c, 1) {
        Ok(rows) => rows.iter().map(|r| or_nan(r.point.weighted_ee)).collect(),
        Err(_) => vec![f64::NAN; 100],
    }
}

/// `[B, proposed, full_array, ...]` for capacities `0..=b_max_j` in steps of
/// `step_j`, two arrivals of `arrival_j` at 0 s and 4 s over 7 s.
#[wasm_bindgen]
pub fn ee_vs_capacity(arrival_j: f64, b_max_j: f64, step_j: f64) -> Vec<f64> {
    let c = scenario(
        SweepKind::EeVsCapacity,
        SystemParams::default(),
        two_arrivals(arrival_j),
        SweepRange {
            start: 0.0,
            stop: b_max_j,
            step: step_j.max(1.0),
        },
        Vec::new(),
    );
    match run_ee_vs_capacity(&c, 1) {
        Ok(rows) => rows
            .iter()
            .flat_map(|r| [r.battery_capacity, or_nan(r.proposed.weighted_ee), or_nan(r.baseline.weighted_ee)])
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// `[SE, EE, ...]` for time-averaged SE targets `0..=se_max` in steps of
/// `se_step`, at battery capacity `capacity_j`.
#[wasm_bindgen]
pub fn ee_se_tradeoff(capacity_j: f64, se_max: f64, se_step: f64) -> Vec<f64> {
    let params = SystemParams {
        battery_capacity: capacity_j,
        overflow: OverflowRule::Spill,
        ..SystemParams::default()
    };
    let c = scenario(
        SweepKind::EeSeTradeoff,
        params,
        two_arrivals(700.0),
        SweepRange {
            start: 0.0,
            stop: se_max,
            step: se_step.max(0.05),
        },
        Vec::new(),
    );
    match run_ee_se_tradeoff(&c, 1) {
        Ok(rows) => rows.iter().flat_map(|r| [r.se_target, or_nan(r.weighted_ee)]).collect(),
        Err(_) => Vec::new(),
    }
}
