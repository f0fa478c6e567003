//! Least weighted energy needed to reach a given spectral efficiency.

use super::inner::{InnerSolution, Problem};
use super::options::SolveOptions;
use crate::error::{Error, Result};
use crate::model::{
    check_feasibility, mean_rate_unchecked, EpochAllocation, EpochTimeline, PowerSplit, Schedule, SystemParams,
};

#[derive(Debug, Clone, PartialEq)]
pub struct TargetSolution {
    pub schedule: Schedule,
    /// Total spectral efficiency over the horizon, bits/Hz.
    pub spectral_efficiency: f64,
    pub weighted_energy: f64,
    /// `U_SE / E_W`, or 0 when the target is 0.
    pub weighted_ee: f64,
    /// Energy price at which the schedule was found.
    pub price: f64,
}

fn total_se(schedule: &Schedule, timeline: &EpochTimeline, params: &SystemParams) -> f64 {
    schedule
        .epochs
        .iter()
        .zip(timeline.epoch_lengths())
        .map(|(e, t)| mean_rate_unchecked(e.antennas, e.power.tx_total(), params.total_antennas) * t)
        .sum()
}

/// Shrinks transmit powers by a common factor until the total spectral
/// efficiency equals `target`. Grid power goes first; battery draws never
/// grow. Returns `None` if the result breaks a constraint.
fn pin(schedule: &Schedule, timeline: &EpochTimeline, params: &SystemParams, target: f64) -> Option<Schedule> {
    let eta = params.pa_efficiency;
    let scaled = |s: f64| {
        Schedule::new(
            schedule
                .epochs
                .iter()
                .map(|e| {
                    let p = e.power.tx_total() * s;
                    let r = e.power.renewable_draw(e.antennas, eta);
                    let consumption = params.consumption(e.antennas, p);
                    EpochAllocation {
                        antennas: e.antennas,
                        power: PowerSplit::from_renewable_budget(params, e.antennas, p, r.min(consumption)),
                    }
                })
                .collect(),
        )
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if total_se(&scaled(mid), timeline, params) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let out = scaled(hi);
    check_feasibility(&out, timeline, params).is_feasible().then_some(out)
}

/// Minimises `E_W` subject to a total spectral efficiency of `target`
/// bits/Hz by bisection on the energy price of `max U − κ·E`.
pub fn min_energy_for_se(params: &SystemParams, timeline: &EpochTimeline, target: f64, options: &SolveOptions) -> Result<TargetSolution> {
    params.validate()?;
    timeline.validate()?;
    options.validate()?;
    let params = SystemParams {
        qos_min: 0.0,
        ..params.clone()
    };
    let params = &params;
    let solve = |price: f64, weight: f64| -> Result<InnerSolution> {
        Problem::new(params, timeline, options.antennas, price, weight)?.solve(options, None)
    };
    let finish = |sol: InnerSolution, price: f64| -> TargetSolution {
        let (schedule, se) = match pin(&sol.schedule, timeline, params, target.max(0.0)) {
            Some(s) if target > 0.0 => {
                let se = total_se(&s, timeline, params);
                (s, se)
            }
            _ => (sol.schedule, sol.spectral_efficiency),
        };
        let energy = crate::model::weighted_energy(&schedule, timeline, params).unwrap_or(f64::NAN);
        TargetSolution {
            weighted_ee: if se > 0.0 { se / energy } else { 0.0 },
            schedule,
            spectral_efficiency: se,
            weighted_energy: energy,
            price,
        }
    };

    if target <= 0.0 {
        return Ok(finish(solve(1.0, 0.0)?, f64::INFINITY));
    }
    let top = solve(0.0, 1.0)?;
    if top.spectral_efficiency < target * (1.0 - 1e-9) {
        return Err(Error::Infeasible(format!(
            "spectral efficiency {target} bits/Hz is above the reachable {:.4}",
            top.spectral_efficiency
        )));
    }
    let mut lo = (0.0, top);
    let mut hi_price = 1e-3;
    loop {
        let s = solve(hi_price, 1.0)?;
        if s.spectral_efficiency < target {
            break;
        }
        lo = (hi_price, s);
        hi_price *= 4.0;
        if hi_price > 1e9 {
            return Ok(finish(lo.1, lo.0));
        }
    }
    let mut lo_price = lo.0.max(hi_price * 1e-6);
    for _ in 0..options.bisection_iterations {
        if hi_price / lo_price < 1.0 + 1e-9 {
            break;
        }
        let mid = (lo_price * hi_price).sqrt();
        let s = solve(mid, 1.0)?;
        if s.spectral_efficiency >= target {
            lo_price = mid;
            lo = (mid, s);
        } else {
            hi_price = mid;
        }
    }
    Ok(finish(lo.1, lo.0))
}
