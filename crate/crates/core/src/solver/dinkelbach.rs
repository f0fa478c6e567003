use super::inner::InnerSolution;
use super::multipliers::Multipliers;
use super::options::{AntennaPolicy, SolveOptions};
use super::qos::{check_qos_reachable, qos_met, qos_solve};
use crate::error::{Error, Result};
use crate::harvest::{battery_trajectory, BatteryTrajectory};
use crate::model::{check_feasibility, EpochTimeline, FeasibilityReport, Schedule, SystemParams};

/// One step of the fractional-programming outer loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DinkelbachState {
    pub iteration: usize,
    /// Energy efficiency used as the price of energy, bits/Hz/J.
    pub q: f64,
    /// `U_SE − q·E_W` of the inner solution, bits/Hz.
    pub surplus: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub converged: bool,
    /// Weighted energy efficiency of the returned schedule.
    pub q_star: f64,
    pub schedule: Schedule,
    pub feasibility: FeasibilityReport,
    pub dual_gap: f64,
    pub trace: Vec<DinkelbachState>,
    pub battery: BatteryTrajectory,
    pub spectral_efficiency: f64,
    pub weighted_energy: f64,
    pub multipliers: Multipliers,
    /// Epochs whose transmit power sat on its box bound because the water
    /// level was unbounded.
    pub capped_epochs: Vec<usize>,
}

impl SolveReport {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

fn report(
    sol: InnerSolution,
    converged: bool,
    trace: Vec<DinkelbachState>,
    params: &SystemParams,
    timeline: &EpochTimeline,
) -> Result<SolveReport> {
    let feasibility = check_feasibility(&sol.schedule, timeline, params);
    if !feasibility.is_feasible() {
        return Err(Error::Infeasible(format!("restored schedule violates constraints:\n{feasibility}")));
    }
    let battery = battery_trajectory(&sol.schedule, timeline, params)?;
    let capped_epochs = sol.decisions.iter().enumerate().filter(|(_, d)| d.capped).map(|(i, _)| i).collect();
    Ok(SolveReport {
        converged,
        q_star: sol.spectral_efficiency / sol.weighted_energy,
        feasibility,
        dual_gap: sol.dual_gap,
        trace,
        battery,
        spectral_efficiency: sol.spectral_efficiency,
        weighted_energy: sol.weighted_energy,
        multipliers: sol.multipliers,
        capped_epochs,
        schedule: sol.schedule,
    })
}

/// Maximises the weighted energy efficiency `U_SE / E_W` by Dinkelbach's
/// method: solve `max U − q·E` at the current `q`, then set `q = U/E`, until
/// the surplus drops below the tolerance.
pub fn dinkelbach_solve(params: &SystemParams, timeline: &EpochTimeline, options: &SolveOptions) -> Result<SolveReport> {
    params.validate()?;
    timeline.validate()?;
    timeline.check_horizon(params.horizon)?;
    options.validate()?;
    check_qos_reachable(params, timeline, options.antennas)?;

    let mut q = 0.0;
    let mut trace = Vec::new();
    let mut prev: Option<InnerSolution> = None;
    let mut warm: Option<Multipliers> = None;
    for n in 1..=options.max_iterations {
        let (_, mut sol) = qos_solve(q, params, timeline, options, warm.as_ref())?;
        if !qos_met(sol.spectral_efficiency, params) {
            return Err(Error::Infeasible("QoS target not met by any restored schedule".into()));
        }
        let mut surplus = sol.surplus(q);
        if surplus < 0.0 {
            // The inner solve is approximate; the previous schedule already
            // attains zero surplus at this q.
            if let Some(p) = prev.take() {
                sol = p;
                surplus = sol.surplus(q).max(0.0);
            }
        }
        trace.push(DinkelbachState {
            iteration: n,
            q,
            surplus,
            tolerance: options.tolerance,
            max_iterations: options.max_iterations,
        });
        if surplus <= options.tolerance {
            return report(sol, true, trace, params, timeline);
        }
        if !(sol.weighted_energy > 0.0) {
            return Err(Error::ZeroEnergy);
        }
        let next = sol.spectral_efficiency / sol.weighted_energy;
        warm = Some(if q > 0.0 {
            sol.multipliers.scaled(next / q)
        } else {
            sol.multipliers.clone()
        });
        q = next;
        prev = Some(sol);
    }
    let best = prev.expect("at least one iteration ran");
    let r = report(best, false, trace, params, timeline)?;
    Err(Error::NotConverged {
        iterations: options.max_iterations,
        report: Box::new(r),
    })
}

/// Same pipeline with every antenna active in every epoch.
pub fn baseline_full_array(params: &SystemParams, timeline: &EpochTimeline) -> Result<SolveReport> {
    baseline_full_array_with(params, timeline, &SolveOptions::default())
}

pub fn baseline_full_array_with(params: &SystemParams, timeline: &EpochTimeline, options: &SolveOptions) -> Result<SolveReport> {
    let options = SolveOptions {
        antennas: AntennaPolicy::Fixed(params.total_antennas),
        ..options.clone()
    };
    dinkelbach_solve(params, timeline, &options)
}
