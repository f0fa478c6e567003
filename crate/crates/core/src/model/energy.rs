use super::params::SystemParams;
use super::rate::mean_rate;
use super::schedule::Schedule;
use super::timeline::EpochTimeline;
use crate::error::{Error, Result};

fn check_lengths(schedule: &Schedule, timeline: &EpochTimeline) -> Result<()> {
    if schedule.len() != timeline.len() {
        return Err(Error::LengthMismatch {
            schedule: schedule.len(),
            timeline: timeline.len(),
        });
    }
    Ok(())
}

/// Total spectral efficiency `Σ_i E[I_sel[i]] T_i` in bits/Hz.
pub fn spectral_efficiency(schedule: &Schedule, timeline: &EpochTimeline, params: &SystemParams) -> Result<f64> {
    check_lengths(schedule, timeline)?;
    schedule
        .epochs
        .iter()
        .zip(timeline.epoch_lengths())
        .map(|(e, &t)| Ok(mean_rate(e.antennas, e.power.tx_total(), params.total_antennas)? * t))
        .sum()
}

/// Weighted energy of one epoch per unit time: renewable draw weighted by `w`
/// plus the grid draw.
pub(crate) fn weighted_power(params: &SystemParams, antennas: usize, split: &super::PowerSplit) -> f64 {
    let eta = params.pa_efficiency;
    params.grid_weight * split.renewable_draw(antennas, eta) + split.grid_draw(antennas, eta)
}

/// Weighted total energy consumption in J.
pub fn weighted_energy(schedule: &Schedule, timeline: &EpochTimeline, params: &SystemParams) -> Result<f64> {
    check_lengths(schedule, timeline)?;
    Ok(schedule
        .epochs
        .iter()
        .zip(timeline.epoch_lengths())
        .map(|(e, &t)| weighted_power(params, e.antennas, &e.power) * t)
        .sum())
}

/// Weighted energy efficiency in bits/Hz/J.
pub fn weighted_ee(schedule: &Schedule, timeline: &EpochTimeline, params: &SystemParams) -> Result<f64> {
    let energy = weighted_energy(schedule, timeline, params)?;
    if energy <= 0.0 {
        return Err(Error::ZeroEnergy);
    }
    Ok(spectral_efficiency(schedule, timeline, params)? / energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EpochAllocation, PowerSplit};

    fn table() -> SystemParams {
        SystemParams::default()
    }

    #[test]
    fn single_epoch_full_array() {
        let p = table();
        let tl = EpochTimeline::single_arrival(0.0, 1.0).unwrap();
        let s = Schedule::new(vec![EpochAllocation {
            antennas: 100,
            power: PowerSplit::balanced(&p, 0.0, 2.0, 0.0, 0.0),
        }]);
        let se = spectral_efficiency(&s, &tl, &p).unwrap();
        assert!((se - 201f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn all_grid_table_energy() {
        // 160.8 + 39.8107/0.35 + 61 * 0.16 over one second.
        let p = table();
        let tl = EpochTimeline::single_arrival(0.0, 1.0).unwrap();
        let s = Schedule::new(vec![EpochAllocation {
            antennas: 61,
            power: PowerSplit::balanced(&p, 0.0, p.p_tx_max, 0.0, 0.0),
        }]);
        let expect = 160.8 + p.p_tx_max / 0.35 + 61.0 * 0.16;
        assert!((expect - 284.304_905_872_8).abs() < 1e-6);
        assert!((weighted_energy(&s, &tl, &p).unwrap() - expect).abs() < 1e-9);
    }

    #[test]
    fn all_renewable_energy_is_weighted() {
        let mut p = table();
        p.grid_weight = 1e-3;
        let tl = EpochTimeline::single_arrival(1e4, 2.0).unwrap();
        let s = Schedule::new(vec![EpochAllocation {
            antennas: 20,
            power: PowerSplit::balanced(&p, 5.0, 0.0, p.p_circuit, p.p_rf),
        }]);
        let raw = p.consumption(20, 5.0) * 2.0;
        assert!((weighted_energy(&s, &tl, &p).unwrap() - 1e-3 * raw).abs() < 1e-9);
    }

    #[test]
    fn zero_transmit_power_gives_zero_ee() {
        let p = table();
        let tl = EpochTimeline::from_lengths(0.0, vec![1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let s = Schedule::silent(&p, 10, 2);
        assert_eq!(weighted_ee(&s, &tl, &p).unwrap(), 0.0);
    }

    #[test]
    fn zero_energy_is_an_error() {
        let mut p = table();
        p.p_circuit = 0.0;
        p.p_rf = 0.0;
        let tl = EpochTimeline::single_arrival(0.0, 1.0).unwrap();
        let s = Schedule::silent(&p, 1, 1);
        assert!(matches!(weighted_ee(&s, &tl, &p), Err(Error::ZeroEnergy)));
    }

    #[test]
    fn two_epoch_hand_evaluation() {
        // Epoch 1: M = 10, 1 W grid, 2 s. Epoch 2: M = 100, 0.5 W renewable, 3 s.
        let p = table();
        let tl = EpochTimeline::from_lengths(1e4, vec![2.0, 3.0], vec![0.0, 0.0]).unwrap();
        let s = Schedule::new(vec![
            EpochAllocation {
                antennas: 10,
                power: PowerSplit::balanced(&p, 0.0, 1.0, 0.0, 0.0),
            },
            EpochAllocation {
                antennas: 100,
                power: PowerSplit::balanced(&p, 0.5, 0.0, p.p_circuit, p.p_rf),
            },
        ]);
        // log2(1 + 10 (1 + ln 10)) * 2 + log2(51) * 3
        let se = 34.025_850_929_940_46f64.log2() * 2.0 + 51f64.log2() * 3.0;
        assert!((spectral_efficiency(&s, &tl, &p).unwrap() - se).abs() < 1e-12);
        let e1 = (160.8 + 1.0 / 0.35 + 10.0 * 0.16) * 2.0;
        let e2 = 0.01 * (160.8 + 0.5 / 0.35 + 100.0 * 0.16) * 3.0;
        assert!((weighted_energy(&s, &tl, &p).unwrap() - (e1 + e2)).abs() < 1e-9);
        assert!((weighted_ee(&s, &tl, &p).unwrap() - se / (e1 + e2)).abs() < 1e-12);
    }

    #[test]
    fn length_mismatch() {
        let p = table();
        let tl = EpochTimeline::single_arrival(0.0, 1.0).unwrap();
        let s = Schedule::silent(&p, 1, 2);
        assert!(matches!(
            spectral_efficiency(&s, &tl, &p),
            Err(Error::LengthMismatch { schedule: 2, timeline: 1 })
        ));
    }
}
