use super::inner::{InnerSolution, Problem};
use super::multipliers::Multipliers;
use super::options::{AntennaPolicy, SolveOptions};
use crate::error::{Error, Result};
use crate::model::{array_gain, EpochTimeline, SystemParams};

/// Relative slack accepted on the QoS constraint.
pub(crate) const QOS_TOL: f64 = 1e-12;

pub(crate) fn qos_met(se: f64, params: &SystemParams) -> bool {
    se >= params.qos_min - QOS_TOL * params.qos_min.abs().max(1.0)
}

/// Upper bound on the attainable spectral efficiency: every epoch may use all
/// harvested energy plus the full grid supply.
pub(crate) fn optimistic_se(params: &SystemParams, timeline: &EpochTimeline, policy: AntennaPolicy) -> f64 {
    let energy = timeline.total_energy();
    let eta = params.pa_efficiency;
    let n = params.total_antennas;
    let counts: Vec<usize> = match policy {
        AntennaPolicy::Free => (1..=n).collect(),
        AntennaPolicy::Fixed(m) => vec![m.clamp(1, n)],
    };
    timeline
        .epoch_lengths()
        .iter()
        .map(|&t| {
            let best = counts
                .iter()
                .map(|&m| {
                    let fixed = params.p_circuit + m as f64 * params.p_rf;
                    let p = (eta * (params.p_grid_max + energy / t - fixed)).clamp(0.0, params.p_tx_max);
                    (array_gain(m, n) * p).ln_1p() / std::f64::consts::LN_2
                })
                .fold(0.0, f64::max);
            best * t
        })
        .sum()
}

pub(crate) fn check_qos_reachable(params: &SystemParams, timeline: &EpochTimeline, policy: AntennaPolicy) -> Result<()> {
    let bound = optimistic_se(params, timeline, policy);
    if !qos_met(bound, params) {
        return Err(Error::Infeasible(format!(
            "QoS target {} bits/Hz is above the {bound:.4} bits/Hz reachable at full power",
            params.qos_min
        )));
    }
    Ok(())
}

/// Smallest QoS multiplier whose inner solution meets the QoS target,
/// together with that solution.
pub(crate) fn qos_solve(
    q: f64,
    params: &SystemParams,
    timeline: &EpochTimeline,
    options: &SolveOptions,
    warm: Option<&Multipliers>,
) -> Result<(f64, InnerSolution)> {
    let run = |mu: f64| -> Result<InnerSolution> {
        let mut s = Problem::new(params, timeline, options.antennas, q, 1.0 + mu)?.solve(options, warm)?;
        s.multipliers.mu = mu;
        Ok(s)
    };
    let base = run(0.0)?;
    if params.qos_min <= 0.0 || qos_met(base.spectral_efficiency, params) {
        return Ok((0.0, base));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut at_hi = loop {
        let s = run(hi)?;
        if qos_met(s.spectral_efficiency, params) {
            break s;
        }
        lo = hi;
        hi *= 4.0;
        if hi > 1e12 {
            return Err(Error::Infeasible(format!(
                "QoS target {} bits/Hz not reached; best found {:.4}",
                params.qos_min, s.spectral_efficiency
            )));
        }
    };
    for _ in 0..options.bisection_iterations {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let s = run(mid)?;
        if qos_met(s.spectral_efficiency, params) {
            hi = mid;
            at_hi = s;
        } else {
            lo = mid;
        }
    }
    Ok((hi, at_hi))
}

/// QoS multiplier chosen by bisection at energy price `q`; zero when the QoS
/// constraint is slack.
pub fn qos_bisection(q: f64, params: &SystemParams, timeline: &EpochTimeline, options: &SolveOptions) -> Result<f64> {
    params.validate()?;
    timeline.validate()?;
    check_qos_reachable(params, timeline, options.antennas)?;
    Ok(qos_solve(q, params, timeline, options, None)?.0)
}
