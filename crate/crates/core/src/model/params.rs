use crate::error::{Error, Result};

/// Converts a power level in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0) / 1000.0
}

/// How the battery capacity enters the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverflowRule {
    /// Overflow is forbidden: the level right after every arrival must stay
    /// at or below the capacity.
    #[default]
    Constrained,
    /// The overflow constraint is dropped; energy arriving into a full battery
    /// is spilled and lost.
    Spill,
}

/// Scalar model constants. Powers in W, energies in J, times in s.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Number of antennas at the base station (N).
    pub total_antennas: usize,
    /// Maximum total transmit power.
    pub p_tx_max: f64,
    /// Constant circuit power.
    pub p_circuit: f64,
    /// Power of one RF chain.
    pub p_rf: f64,
    /// Power amplifier efficiency, strictly inside (0, 1).
    pub pa_efficiency: f64,
    /// Cost weight of renewable energy relative to grid energy, inside (0, 1).
    pub grid_weight: f64,
    /// Maximum power the grid can supply.
    pub p_grid_max: f64,
    /// Battery capacity.
    pub battery_capacity: f64,
    /// Minimum spectral efficiency over the horizon, bits/Hz.
    pub qos_min: f64,
    /// Energy arrival rate, events/s.
    pub arrival_rate: f64,
    /// Horizon length.
    pub horizon: f64,
    pub overflow: OverflowRule,
}

impl Default for SystemParams {
    /// Simulation defaults: 46 dBm transmit cap, w = 0.01, 160.8 W circuit,
    /// 160 mW per RF chain, 100 antennas, 300 W grid, 35 % PA efficiency,
    /// 7 s horizon, 7 bits/Hz QoS, 1500 J battery, one arrival per second.
    fn default() -> Self {
        Self {
            total_antennas: 100,
            p_tx_max: dbm_to_watts(46.0),
            p_circuit: 160.8,
            p_rf: 0.160,
            pa_efficiency: 0.35,
            grid_weight: 0.01,
            p_grid_max: 300.0,
            battery_capacity: 1500.0,
            qos_min: 7.0,
            arrival_rate: 1.0,
            horizon: 7.0,
            overflow: OverflowRule::Constrained,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        if self.total_antennas < 1 {
            return bad("total_antennas must be at least 1");
        }
        let non_negative = [
            ("p_tx_max", self.p_tx_max),
            ("p_circuit", self.p_circuit),
            ("p_rf", self.p_rf),
            ("p_grid_max", self.p_grid_max),
            ("battery_capacity", self.battery_capacity),
            ("qos_min", self.qos_min),
        ];
        for (name, value) in non_negative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be finite and >= 0, got {value}")));
            }
        }
        if !(self.pa_efficiency > 0.0 && self.pa_efficiency < 1.0) {
            return bad("pa_efficiency must lie in (0, 1)");
        }
        if !(self.grid_weight > 0.0 && self.grid_weight < 1.0) {
            return bad("grid_weight must lie in (0, 1)");
        }
        if !(self.arrival_rate > 0.0 && self.arrival_rate.is_finite()) {
            return bad("arrival_rate must be > 0");
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad("horizon must be > 0");
        }
        Ok(())
    }

    /// Total power drawn by an epoch running `antennas` chains at transmit power `p_tx`.
    pub fn consumption(&self, antennas: usize, p_tx: f64) -> f64 {
        p_tx / self.pa_efficiency + self.p_circuit + antennas as f64 * self.p_rf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dbm_conversion() {
        assert!((dbm_to_watts(46.0) - 39.810_717_055).abs() < 1e-8);
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn defaults_are_valid() {
        SystemParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_weight_and_efficiency() {
        let mut p = SystemParams::default();
        p.grid_weight = 1.0;
        assert!(p.validate().is_err());
        let mut p = SystemParams::default();
        p.pa_efficiency = 0.0;
        assert!(p.validate().is_err());
        let mut p = SystemParams::default();
        p.total_antennas = 0;
        assert!(p.validate().is_err());
        let mut p = SystemParams::default();
        p.p_rf = -0.1;
        assert!(p.validate().is_err());
    }
}
