use crate::error::{Error, Result};
use crate::model::{EpochTimeline, Schedule, SystemParams};

/// Battery bookkeeping for one epoch, all in J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochLedger {
    /// Level just before this epoch's arrival.
    pub pre_arrival: f64,
    /// Level just after the arrival, capped at the capacity.
    pub post_arrival: f64,
    /// Renewable energy drained during the epoch.
    pub drain: f64,
    /// Harvested energy lost because the battery was full.
    pub overflow: f64,
    /// Energy left for the circuit after this epoch's transmit drain (E_C).
    pub residual_circuit: f64,
    /// Energy left for the RF chains after transmit and circuit drains (E_RF).
    pub residual_rf: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatteryTrajectory {
    pub epochs: Vec<EpochLedger>,
    /// Level at the end of the horizon.
    pub final_level: f64,
    /// Epochs whose drain exceeds the stored energy, with the shortfall in J.
    pub deficits: Vec<(usize, f64)>,
}

impl BatteryTrajectory {
    pub fn total_drain(&self) -> f64 {
        self.epochs.iter().map(|e| e.drain).sum()
    }

    pub fn total_overflow(&self) -> f64 {
        self.epochs.iter().map(|e| e.overflow).sum()
    }

    /// `initial + harvested - (final + drains + overflow)`; zero up to rounding.
    pub fn conservation_residual(&self, timeline: &EpochTimeline) -> f64 {
        timeline.total_energy() - (self.final_level + self.total_drain() + self.total_overflow())
    }
}

/// Forward simulation of the battery. Arrivals are clipped at the capacity;
/// drains are whatever the schedule's renewable components ask for, so an
/// infeasible schedule shows up as a negative level and a recorded deficit.
pub fn battery_trajectory(
    schedule: &Schedule,
    timeline: &EpochTimeline,
    params: &SystemParams,
) -> Result<BatteryTrajectory> {
    if schedule.len() != timeline.len() {
        return Err(Error::LengthMismatch {
            schedule: schedule.len(),
            timeline: timeline.len(),
        });
    }
    let eta = params.pa_efficiency;
    let cap = params.battery_capacity;
    let mut level = timeline.initial_energy();
    let mut epochs = Vec::with_capacity(schedule.len());
    let mut deficits = Vec::new();
    for (i, ((alloc, &t), &harvest)) in schedule
        .epochs
        .iter()
        .zip(timeline.epoch_lengths())
        .zip(timeline.harvested())
        .enumerate()
    {
        let pre = level;
        let filled = pre + harvest;
        let post = filled.min(cap);
        let overflow = filled - post;
        let pw = &alloc.power;
        let drain = pw.renewable_draw(alloc.antennas, eta) * t;
        let residual_circuit = post - pw.tx_renewable() / eta * t;
        let residual_rf = residual_circuit - pw.circuit_renewable() * t;
        if drain > post {
            deficits.push((i, drain - post));
        }
        level = post - drain;
        epochs.push(EpochLedger {
            pre_arrival: pre,
            post_arrival: post,
            drain,
            overflow,
            residual_circuit,
            residual_rf,
        });
    }
    Ok(BatteryTrajectory {
        epochs,
        final_level: level,
        deficits,
    })
}
