use std::fmt;

use super::params::{OverflowRule, SystemParams};
use super::rate::mean_rate_unchecked;
use super::schedule::Schedule;
use super::timeline::EpochTimeline;
use crate::harvest::battery_trajectory;

/// Relative tolerance on energies and powers, absolute on rates.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// C1: harvested energy cannot be used before it arrives.
    Causality,
    /// C2: the battery may not overflow at an arrival.
    Overflow,
    /// C3: circuit power is fully supplied.
    CircuitSplit,
    /// C4: RF chain power is fully supplied.
    RfSplit,
    /// C5: transmit power cap.
    TxCap,
    /// C6: grid supply cap.
    GridCap,
    /// C7: minimum spectral efficiency over the horizon.
    Qos,
    /// C8: `1 <= M <= N`.
    AntennaRange,
    /// C9: all power components non-negative.
    NonNegative,
}

impl Constraint {
    pub const ALL: [Constraint; 9] = [
        Constraint::Causality,
        Constraint::Overflow,
        Constraint::CircuitSplit,
        Constraint::RfSplit,
        Constraint::TxCap,
        Constraint::GridCap,
        Constraint::Qos,
        Constraint::AntennaRange,
        Constraint::NonNegative,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Constraint::Causality => "C1",
            Constraint::Overflow => "C2",
            Constraint::CircuitSplit => "C3",
            Constraint::RfSplit => "C4",
            Constraint::TxCap => "C5",
            Constraint::GridCap => "C6",
            Constraint::Qos => "C7",
            Constraint::AntennaRange => "C8",
            Constraint::NonNegative => "C9",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap()
    }
}

/// Worst violation of one constraint. `violation` is `lhs - rhs` in the
/// constraint's own unit, so non-positive values mean slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintStatus {
    pub constraint: Constraint,
    pub enforced: bool,
    pub violation: f64,
    pub epoch: Option<usize>,
    pub tolerance: f64,
}

impl ConstraintStatus {
    fn new(constraint: Constraint, tolerance: f64) -> Self {
        Self {
            constraint,
            enforced: true,
            violation: f64::NEG_INFINITY,
            epoch: None,
            tolerance,
        }
    }

    fn record(&mut self, violation: f64, epoch: Option<usize>) {
        if violation > self.violation || violation.is_nan() {
            self.violation = violation;
            self.epoch = epoch;
        }
    }

    pub fn satisfied(&self) -> bool {
        !self.enforced || self.violation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub statuses: [ConstraintStatus; 9],
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.statuses.iter().all(ConstraintStatus::satisfied)
    }

    pub fn status(&self, constraint: Constraint) -> &ConstraintStatus {
        &self.statuses[constraint.index()]
    }

    pub fn violated(&self) -> impl Iterator<Item = &ConstraintStatus> {
        self.statuses.iter().filter(|s| !s.satisfied())
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statuses {
            let state = if !s.enforced {
                "off"
            } else if s.satisfied() {
                "ok"
            } else {
                "VIOLATED"
            };
            write!(f, "{}={} ({:.3e}", s.constraint.label(), state, s.violation)?;
            if let Some(e) = s.epoch {
                write!(f, " @{e}")?;
            }
            write!(f, ") ")?;
        }
        Ok(())
    }
}

/// Evaluates constraints C1 to C9 for a schedule. Never fails; a length
/// mismatch shows up as a C8 violation.
pub fn check_feasibility(schedule: &Schedule, timeline: &EpochTimeline, params: &SystemParams) -> FeasibilityReport {
    let eta = params.pa_efficiency;
    let n = params.total_antennas;
    let lengths = timeline.epoch_lengths();
    let harvested = timeline.harvested();
    let energy_scale = timeline
        .total_energy()
        .max(params.battery_capacity)
        .max(params.consumption(n, params.p_tx_max) * timeline.horizon())
        .max(1.0);
    let power_scale = params.consumption(n, params.p_tx_max).max(params.p_grid_max).max(1.0);
    let energy_tol = FEASIBILITY_TOL * energy_scale;
    let power_tol = FEASIBILITY_TOL * power_scale;

    let mut st = Constraint::ALL.map(|c| {
        let tol = match c {
            Constraint::Causality | Constraint::Overflow => energy_tol,
            Constraint::Qos => FEASIBILITY_TOL * params.qos_min.abs().max(1.0),
            Constraint::AntennaRange => 0.0,
            _ => power_tol,
        };
        ConstraintStatus::new(c, tol)
    });
    let idx = |c: Constraint| c.index();

    if schedule.len() != timeline.len() {
        st[idx(Constraint::AntennaRange)].record(f64::INFINITY, None);
        for s in st.iter_mut() {
            if s.violation == f64::NEG_INFINITY {
                s.violation = 0.0;
            }
        }
        return FeasibilityReport { statuses: st };
    }

    let drains = schedule.renewable_drains(lengths, eta);

    match params.overflow {
        OverflowRule::Constrained => {
            let mut used = 0.0;
            let mut arrived = timeline.initial_energy();
            for (e, (&d, &h)) in drains.iter().zip(harvested).enumerate() {
                arrived += h;
                // Level right after arrival e: everything arrived minus drains before e.
                st[idx(Constraint::Overflow)].record(arrived - used - params.battery_capacity, Some(e));
                used += d;
                st[idx(Constraint::Causality)].record(used - arrived, Some(e));
            }
        }
        OverflowRule::Spill => {
            st[idx(Constraint::Overflow)].enforced = false;
            let traj = battery_trajectory(schedule, timeline, params).expect("lengths checked above");
            for (e, ep) in traj.epochs.iter().enumerate() {
                st[idx(Constraint::Causality)].record(ep.drain - ep.post_arrival, Some(e));
            }
        }
    }

    let mut se = 0.0;
    for (e, (alloc, &t)) in schedule.epochs.iter().zip(lengths).enumerate() {
        let m = alloc.antennas;
        let pw = &alloc.power;
        let mf = m as f64;
        st[idx(Constraint::CircuitSplit)].record(
            (pw.circuit_renewable() + pw.circuit_grid() - params.p_circuit).abs(),
            Some(e),
        );
        st[idx(Constraint::RfSplit)].record(
            ((pw.rf_renewable() + pw.rf_grid() - params.p_rf) * mf).abs(),
            Some(e),
        );
        st[idx(Constraint::TxCap)].record(pw.tx_total() - params.p_tx_max, Some(e));
        st[idx(Constraint::GridCap)].record(pw.grid_draw(m, eta) - params.p_grid_max, Some(e));
        let range = if m < 1 {
            1.0 - mf
        } else if m > n {
            mf - n as f64
        } else {
            0.0
        };
        st[idx(Constraint::AntennaRange)].record(range, Some(e));
        let most_negative = pw.components().iter().fold(f64::INFINITY, |a, &b| a.min(b));
        st[idx(Constraint::NonNegative)].record(-most_negative, Some(e));
        se += mean_rate_unchecked(m.clamp(1, n), pw.tx_total().max(0.0), n) * t;
    }
    st[idx(Constraint::Qos)].record(params.qos_min - se, None);

    FeasibilityReport { statuses: st }
}
